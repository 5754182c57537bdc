#pragma once

#include <stdexcept>
#include <string>

namespace wqed {

// Invalid user input or violated precondition. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Self-consistent iteration did not reach tolerance. CLI exit code 2.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), residual_(last_residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Eigensolver or root-finder failure. CLI exit code 3.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a closed form (band edges, arccosh <= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace wqed
