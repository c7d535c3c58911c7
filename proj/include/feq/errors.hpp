#pragma once

#include <stdexcept>
#include <string>

namespace feq {

// Precondition / shape violations: mismatched groups, malformed matrices,
// references that do not resolve.
class StructuralError : public std::invalid_argument {
public:
    explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested computation exceeds the configured desk-scale bounds.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, long long rows)
        : std::runtime_error(what), rows_(rows) {}
    long long rows() const noexcept { return rows_; }

private:
    long long rows_;
};

// Raised when two routes that a theorem says must agree disagree.
// Seeing this means the implementation is buggy, not the input.
class TheoremViolation : public std::logic_error {
public:
    explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace feq
