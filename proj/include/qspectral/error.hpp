#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qspectral {

/// Thrown for inputs outside an operation's mathematical domain (e.g. inverting 0).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operand sizes that do not fit together.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gram-Schmidt met a vector that is (numerically) in the span of its predecessors.
class rank_deficiency : public std::runtime_error {
public:
    rank_deficiency(std::size_t index, const std::string& what)
        : std::runtime_error(what + " (vector " + std::to_string(index) + ")"), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A precondition on operator structure failed: normality, anti self-adjointness, commutation.
class structure_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A family of vectors that was required to be orthonormal is not.
class invalid_basis : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An eigensolver or factorization produced something inconsistent with exact theory.
class numerical_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qspectral
