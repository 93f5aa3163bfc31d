#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hadfrac::numerics {

struct RootConfig {
    double abs_tol = 1e-12;
    double step_tol = 1e-14;
    int max_iter = 100;

    /// Throws DomainError unless all fields are positive.
    void validate() const;
};

/// Defaults used by the variational solver.
inline RootConfig system_defaults() { return RootConfig{1e-10, 1e-14, 50}; }

struct NewtonReport {
    std::vector<double> solution;
    int iterations = 0;
    double final_residual_norm = 0.0;
    bool converged = false;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<std::vector<double>(std::span<const double>)>;

/// Gamma function for positive finite arguments.
double gamma(double x);

/// Root of a scalar function.
///
/// Newton iteration with a central-difference slope. When the slope vanishes
/// or Newton fails to reduce |g|, the bracket around the best point is grown
/// geometrically until a sign change appears, then bisection finishes the job.
/// Throws ConvergenceError (carrying the best iterate) if neither route works.
double solve_scalar(const ScalarFn& g, double x0, const RootConfig& cfg);

/// Damped Newton for G(x) = 0 with a forward-difference Jacobian and a
/// halving line search on the max-norm of G.
///
/// Stops when ||G||_inf <= abs_tol, or when the accepted step is shorter than
/// step_tol; the latter only counts as converged if the residual also meets
/// abs_tol. A singular Jacobian is retried once with Tikhonov regularisation.
NewtonReport solve_system(const VectorFn& G, std::span<const double> x0, const RootConfig& cfg);

}  // namespace hadfrac::numerics
