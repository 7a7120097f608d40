#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdrst/errors.hpp"

namespace gdrst {

// One cost dimension. The sense is always minimize: maximize objectives are
// negated when the vector is assembled.
struct CostDim {
    std::string name;
    double value = 0.0;

    bool operator==(const CostDim& o) const { return name == o.name && value == o.value; }
};

/**
 * The multi-criteria vector a candidate is judged by: travel-time
 * dimensions first, in preference order, then attribute objectives.
 * `unreachable` marks candidates with an absent travel-time dimension (or a
 * missing objective attribute); such vectors carry no comparable values and
 * must not reach dominance tests.
 */
struct CostVector {
    std::string owner;  // poi_id
    std::vector<CostDim> dims;
    bool unreachable = false;

    bool operator==(const CostVector& o) const {
        return owner == o.owner && dims == o.dims && unreachable == o.unreachable;
    }
};

bool same_schema(const CostVector& a, const CostVector& b);

// Strict Pareto dominance: a is no worse than b in every dimension and
// strictly better in at least one. Throws on schema mismatch or
// unreachable operands.
bool dominates(const CostVector& a, const CostVector& b);

// The vectors not dominated by any other input vector, in input order.
// Duplicates (identical dims, distinct owners) are all retained.
std::vector<CostVector> skyline_of(const std::vector<CostVector>& vectors);

/**
 * A computed skyline with its provenance: the traffic revision it is valid
 * for, the settled-node/expansion count (the I/O-cost proxy) and measured
 * compute time. Members are kept sorted by owner.
 */
struct SkylineResult {
    std::vector<CostVector> members;
    std::uint64_t revision = 0;
    std::uint64_t expansions = 0;
    std::uint64_t cpu_nanos = 0;
    std::vector<std::string> warnings;

    std::vector<std::string> member_ids() const;
    bool same_members_and_vectors(const SkylineResult& o) const;
};

void sort_members_by_owner(std::vector<CostVector>& members);

}  // namespace gdrst
