#pragma once

#include <stdexcept>
#include <string>

namespace nlsfem {

/// Invalid user-facing configuration (unknown ids, out-of-range sizes).
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (time outside [0,T], point outside the box).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A sparse factorization failed or its solution missed the residual tolerance.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The time march produced non-finite or unbounded values.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(int step, const std::string& what)
        : std::runtime_error(what), step_(step) {}

    [[nodiscard]] int step() const noexcept { return step_; }

private:
    int step_;
};

} // namespace nlsfem
