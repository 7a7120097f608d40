#pragma once

#include <stdexcept>
#include <string>

namespace gdrst {

// Malformed or inconsistent input data (files, traffic updates, query records).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A query that cannot be answered (e.g. no network node inside the sector).
class QueryError : public std::runtime_error {
public:
    explicit QueryError(const std::string& what) : std::runtime_error(what) {}
};

// Result disagreement between algorithms in comparison mode.
class MismatchError : public std::runtime_error {
public:
    explicit MismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gdrst
