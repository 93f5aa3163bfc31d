#pragma once

#include "hadfrac/expr.hpp"
#include "hadfrac/grid.hpp"
#include "hadfrac/hadamard.hpp"
#include "hadfrac/numerics.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hadfrac {

/// f(t, x, D^alpha x) = 0 on [a, b], x(a) = x_a.
struct FdeProblem {
    double a = 1.0, b = 2.0;
    FracOrder alpha{0.5};
    double x_a = 0.0;
    expr::Expr residual = expr::Expr::literal(0.0);
};

/// Minimise integral_a^b L(t, x, D^alpha x) dt subject to x(a) = x_a, x(b) = x_b.
struct VariationalProblem {
    double a = 1.0, b = 2.0;
    FracOrder alpha{0.5};
    double x_a = 0.0, x_b = 0.0;
    expr::Expr lagrangian = expr::Expr::literal(0.0);
};

struct SolveDiagnostics {
    /// FDE: root-finder residual |f| at each step N = 1..n. Variational: final ||grad||_inf only.
    std::vector<double> residuals;
    int iterations = 0;
};

struct SolveResult {
    GridSamples samples;
    SolveDiagnostics diagnostics;
};

/// Marches N = 1..n, solving one scalar equation per step for x_N with the
/// discrete left derivative in place of D^alpha x. The history part of the
/// derivative only involves x_0..x_{N-1}, so each step is independent of the
/// future. With `steps` set, stops after that many steps on the same n-grid
/// and returns only x_0..x_steps (as samples on the truncated grid).
SolveResult solve_fde(const FdeProblem& p, int n, const numerics::RootConfig& cfg = {},
                      std::optional<int> steps = std::nullopt);

/// Discrete objective Psi(x_1..x_{n-1}) on the log grid: trapezoidal rule
/// with the discrete derivative, where the t_0 term borrows the derivative
/// at t_1. Endpoints are pinned to x_a and x_b.
class VariationalObjective {
public:
    /// Throws UnsupportedDerivative if the Lagrangian cannot be differentiated in x or v.
    VariationalObjective(const VariationalProblem& p, int n);

    const LogGrid& grid() const noexcept { return grid_; }
    const WeightTable& weights() const noexcept { return weights_; }
    int unknowns() const noexcept { return grid_.n() - 1; }

    /// Trapezoid weights w_0..w_n.
    std::span<const double> trapezoid_weights() const noexcept { return trap_; }

    /// Full sample vector x_a, interior..., x_b.
    std::vector<double> assemble(std::span<const double> interior) const;

    /// Discrete derivative at each node; index 0 repeats index 1.
    std::vector<double> derivatives(std::span<const double> interior) const;

    double value(std::span<const double> interior) const;
    std::vector<double> gradient(std::span<const double> interior) const;

private:
    VariationalProblem problem_;
    LogGrid grid_;
    WeightTable weights_;
    expr::Expr dl_dx_, dl_dv_;
    std::vector<double> trap_;

    void check_size(std::span<const double> interior) const;
};

/// Psi as a callable of the interior values.
std::function<double(std::span<const double>)> build_objective(const VariationalProblem& p, int n);

/// dPsi/dx_N for N = 1..n-1.
std::vector<double> gradient(const VariationalProblem& p, int n, std::span<const double> interior);

/// Solves grad Psi = 0 by damped Newton starting from the index-linear
/// interpolation of the boundary values.
SolveResult solve_variational(const VariationalProblem& p, int n,
                              const numerics::RootConfig& cfg = numerics::system_defaults());

}  // namespace hadfrac
