#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpmat {

/// Division by zero, square root of a negative number, unparsable decimal
/// strings and similar scalar-level failures.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Non-conforming matrix shapes or out-of-range views.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A zero pivot met during pivot-free elimination.
class SingularError : public std::runtime_error {
public:
    explicit SingularError(std::size_t index)
        : std::runtime_error("zero pivot at index " + std::to_string(index)),
          index_(index)
    {
    }

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Throws unless the FPU is in round-to-nearest mode. The error-free
/// transformations are only exact under that mode.
void ensure_round_to_nearest();

}  // namespace mpmat
