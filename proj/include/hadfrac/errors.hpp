#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadfrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative method stopped without meeting its tolerance.
/// Carries the best iterate found so callers can inspect or report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best, double residual)
        : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}

    const std::vector<double>& best_iterate() const noexcept { return best_; }
    double best_residual() const noexcept { return residual_; }

private:
    std::vector<double> best_;
    double residual_;
};

/// Quadrature could not reach the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// A function or expression produced a non-finite value or hit a domain violation.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte position of the problem.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError {
public:
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class UnsupportedDerivative : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver step failed. `step()` is the mesh index (FDE) or iteration count (variational).
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, int step, std::vector<double> best)
        : std::runtime_error(what), step_(step), best_(std::move(best)) {}

    int step() const noexcept { return step_; }
    const std::vector<double>& best_iterate() const noexcept { return best_; }

private:
    int step_;
    std::vector<double> best_;
};

}  // namespace hadfrac
