#pragma once

// Discrete left/right Hadamard fractional derivatives on a log-uniform grid.
//
// For 0 < alpha < 1 the left derivative at t_N is approximated by
//
//   x_0 / Gamma(1-alpha) * ln(t_N/a)^(-alpha)
//     + psi * sum_{k=1..N} w_{N-k+1} * (x_k - x_{k-1}) / exp(k dT) * t_k
//
// with w_k = k^(1-alpha) - (k-1)^(1-alpha) and
// psi = dT^(1-alpha) / (a (1 - exp(-dT)) Gamma(2-alpha)).
// The right derivative mirrors it over k = N+1..n. Each evaluation is a
// dot product between a slice of the weight table and the scaled
// increments, so a full trajectory costs O(n^2).

#include "hadfrac/grid.hpp"

#include <functional>
#include <vector>

namespace hadfrac {

/// Fractional order, 0 < alpha < 1.
class FracOrder {
public:
    explicit FracOrder(double alpha);
    double value() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Weights, psi and per-node scale factors for one (alpha, grid) pair.
class WeightTable {
public:
    WeightTable(FracOrder alpha, LogGrid grid);

    FracOrder alpha() const noexcept { return alpha_; }
    const LogGrid& grid() const noexcept { return grid_; }
    double psi() const noexcept { return psi_; }

    /// w_k for 0 <= k <= n, with the convention w_0 = 0.
    double omega(int k) const;
    std::span<const double> omegas() const noexcept { return omega_; }

    /// w_n, w_{n-1}, ..., w_1: slices of this give the left-sum weights in
    /// increment order.
    std::span<const double> omegas_reversed() const noexcept { return omega_rev_; }

    /// exp(k dT), k = 0..n.
    double exp_step(int k) const { return exp_k_.at(static_cast<std::size_t>(k)); }

    double gamma_1ma() const noexcept { return gamma_1ma_; }  ///< Gamma(1 - alpha)
    double gamma_2ma() const noexcept { return gamma_2ma_; }  ///< Gamma(2 - alpha)

private:
    FracOrder alpha_;
    LogGrid grid_;
    std::vector<double> omega_;
    std::vector<double> omega_rev_;
    std::vector<double> exp_k_;
    double psi_;
    double gamma_1ma_, gamma_2ma_;
};

WeightTable make_weights(FracOrder alpha, const LogGrid& grid);

/// Maxima of |x'| and |x''| on [a, b].
struct ErrorBoundInputs {
    double m1 = 0.0;
    double m2 = 0.0;
};

/// d_k = (x_k - x_{k-1}) / exp(k dT) * t_k for k = 1..upto; d_0 = 0.
std::vector<double> scaled_increments(const GridSamples& samples, const WeightTable& w, int upto);

/// Left derivative at t_N, 1 <= N <= n.
double left_deriv(const GridSamples& samples, const WeightTable& w, int N);

/// Left derivative at every N = 1..n; element i holds N = i + 1.
std::vector<double> left_deriv_all(const GridSamples& samples, const WeightTable& w);

/// Same operator with t_k / exp(k dT) replaced by a, i.e. psi*a*sum w (x_k - x_{k-1}).
/// Algebraically equal to left_deriv; kept to check that identity numerically.
double left_deriv_simplified(const GridSamples& samples, const WeightTable& w, int N);

/// Right derivative at t_N, 0 <= N <= n-1.
double right_deriv(const GridSamples& samples, const WeightTable& w, int N);

/// Right derivative at every N = 0..n-1; element i holds N = i.
std::vector<double> right_deriv_all(const GridSamples& samples, const WeightTable& w);

/// Partial derivative of the discrete left derivative at t_M with respect to x_N.
/// Zero for M < N; psi*(w_{M-N+1} s_N - w_{M-N} s_{N+1}) otherwise, s_k = t_k / exp(k dT).
double left_deriv_coefficient(const WeightTable& w, int M, int N);

/// Exact left derivative of ln t with base point a = 1: ln(t)^(1-alpha) / Gamma(2-alpha).
double analytic_left_ln(FracOrder alpha, double a, double t);

using RealFn = std::function<double(double)>;

/// Left derivative from its integral form, by tanh-sinh
/// quadrature after the substitutions u = ln(t/tau), s = u^(1-alpha), which
/// remove the kernel singularity at tau = t. Absolute error <= tol or AccuracyError.
double oracle_left(FracOrder alpha, const RealFn& x, const RealFn& dx, double a, double t, double tol);

/// Right-sided counterpart of oracle_left on [t, b].
double oracle_right(FracOrder alpha, const RealFn& x, const RealFn& dx, double b, double t, double tol);

/// (M1 + 1.5 M2 b) / Gamma(2-alpha) * (b - a) * dT^(1-alpha).
double error_bound(const WeightTable& w, const ErrorBoundInputs& mb);

}  // namespace hadfrac
