#pragma once

#include <stdexcept>
#include <string>

namespace crossif {

/// Violated precondition or malformed input supplied by the caller.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear solver breakdown, singular factorization or non-convergence.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    /// Residual measure reached before the failure was detected.
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// File could not be read, parsed or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace crossif
