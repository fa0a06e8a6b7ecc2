#pragma once

#include <stdexcept>
#include <string>

namespace stabreg {

// Bad experiment/algorithm configuration (unknown enum, invalid parameter).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Point outside the domain of a function (e.g. entropy gradient at the boundary).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Dataset carries no usable signal (e.g. all-zero features give beta = 0).
class DegenerateDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An inner 1-D solver (bisection) failed to reach its residual tolerance.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Non-finite value encountered while iterating; carries the step index.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, long step)
        : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

// High-precision oracle exhausted its budget before certifying the gap.
class OracleFailure : public std::runtime_error {
public:
    OracleFailure(const std::string& what, double best_certificate, long budget)
        : std::runtime_error(what + " (best certificate " + std::to_string(best_certificate) +
                             " after " + std::to_string(budget) + " steps)"),
          best_certificate_(best_certificate),
          budget_(budget) {}
    double best_certificate() const { return best_certificate_; }
    long budget() const { return budget_; }

private:
    double best_certificate_;
    long budget_;
};

// The epoch schedule ran out (regularization underflowed machine range).
class ScheduleExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stabreg
