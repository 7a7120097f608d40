#include "gdrst/skyline.hpp"

#include <algorithm>
#include <numeric>

namespace gdrst {

bool same_schema(const CostVector& a, const CostVector& b) {
    if (a.dims.size() != b.dims.size()) return false;
    for (std::size_t i = 0; i < a.dims.size(); ++i) {
        if (a.dims[i].name != b.dims[i].name) return false;
    }
    return true;
}

bool dominates(const CostVector& a, const CostVector& b) {
    if (a.unreachable || b.unreachable) {
        throw DataError("dominance undefined for unreachable cost vectors");
    }
    if (!same_schema(a, b)) {
        throw DataError("dominance undefined across cost-vector schemas");
    }
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.dims.size(); ++i) {
        if (a.dims[i].value > b.dims[i].value) return false;
        if (a.dims[i].value < b.dims[i].value) strictly_better = true;
    }
    return strictly_better;
}

std::vector<CostVector> skyline_of(const std::vector<CostVector>& vectors) {
    if (vectors.empty()) return {};
    for (const CostVector& v : vectors) {
        if (v.unreachable) throw DataError("skyline_of: unreachable vector not excluded by caller");
        if (!same_schema(v, vectors.front())) throw DataError("skyline_of: mixed schemas");
    }

    // Process in ascending dim-sum order: a dominator always has a strictly
    // smaller sum, so each vector only needs testing against the skyline
    // built so far.
    std::vector<double> sums(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        double s = 0.0;
        for (const CostDim& d : vectors[i].dims) s += d.value;
        sums[i] = s;
    }
    std::vector<std::size_t> order(vectors.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });

    std::vector<char> keep(vectors.size(), 0);
    std::vector<std::size_t> window;
    for (std::size_t idx : order) {
        bool dominated = false;
        for (std::size_t w : window) {
            if (dominates(vectors[w], vectors[idx])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            keep[idx] = 1;
            window.push_back(idx);
        }
    }

    std::vector<CostVector> out;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (keep[i]) out.push_back(vectors[i]);
    }
    return out;
}

std::vector<std::string> SkylineResult::member_ids() const {
    std::vector<std::string> ids;
    ids.reserve(members.size());
    for (const CostVector& v : members) ids.push_back(v.owner);
    return ids;
}

bool SkylineResult::same_members_and_vectors(const SkylineResult& o) const {
    if (members.size() != o.members.size()) return false;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!(members[i] == o.members[i])) return false;
    }
    return true;
}

void sort_members_by_owner(std::vector<CostVector>& members) {
    std::sort(members.begin(), members.end(),
              [](const CostVector& a, const CostVector& b) { return a.owner < b.owner; });
}

}  // namespace gdrst
