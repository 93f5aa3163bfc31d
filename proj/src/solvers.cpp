#include "hadfrac/solvers.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/kernels.hpp"

#include <cmath>
#include <string>

namespace hadfrac {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_interval(double a, double b)
{
    if (!(a > 0.0) || !(b > a)) throw DomainError("problem interval must satisfy 0 < a < b");
}

}  // namespace

// ---------------------------------------------------------------------------
// Initial value problem

SolveResult solve_fde(const FdeProblem& p, int n, const numerics::RootConfig& cfg, std::optional<int> steps)
{
    check_interval(p.a, p.b);
    cfg.validate();
    const LogGrid grid(p.a, p.b, n);
    const int last = steps.value_or(n);
    if (last < 1 || last > n) throw DomainError("solve_fde: steps must lie in 1..n");

    const WeightTable w(p.alpha, grid);
    const auto t = grid.nodes();
    const auto rev = w.omegas_reversed();
    const double al = p.alpha.value();

    std::vector<double> x(idx(n) + 1, 0.0);
    std::vector<double> d(idx(n) + 1, 0.0);  // scaled increments, filled as we go
    x[0] = p.x_a;

    SolveDiagnostics diag;
    diag.residuals.reserve(idx(last));
    for (int N = 1; N <= last; ++N) {
        const double tN = t[idx(N)];
        const double boundary = x[0] / w.gamma_1ma() * std::pow(std::log(tN / grid.a()), -al);
        const double history = kernels::dot(rev.subspan(idx(n - N), idx(N - 1)), std::span<const double>(d).subspan(1, idx(N - 1)));
        const double eN = w.exp_step(N);
        const double xprev = x[idx(N - 1)];
        const double lead = w.omega(1);

        auto deriv = [&](double xN) { return boundary + w.psi() * (history + lead * ((xN - xprev) / eN * tN)); };
        auto residual = [&](double xN) { return expr::eval(p.residual, {tN, xN, deriv(xN)}); };

        double xN = 0.0;
        try {
            xN = numerics::solve_scalar(residual, xprev, cfg);
        } catch (const ConvergenceError& e) {
            x[idx(N)] = e.best_iterate().empty() ? xprev : e.best_iterate().front();
            throw SolveError("solve_fde: step N=" + std::to_string(N) + " failed: " + e.what(), N,
                             {x.begin(), x.begin() + N + 1});
        } catch (const EvaluationError& e) {
            throw SolveError("solve_fde: step N=" + std::to_string(N) + " failed: " + e.what(), N,
                             {x.begin(), x.begin() + N});
        } catch (const DomainError& e) {
            throw SolveError("solve_fde: step N=" + std::to_string(N) + " failed: " + e.what(), N,
                             {x.begin(), x.begin() + N});
        }
        x[idx(N)] = xN;
        d[idx(N)] = (xN - xprev) / eN * tN;
        diag.residuals.push_back(std::abs(residual(xN)));
        ++diag.iterations;
    }

    if (last == n) return {GridSamples(grid, std::move(x)), std::move(diag)};
    x.resize(idx(last) + 1);
    return {GridSamples(LogGrid(p.a, grid.node(last), last), std::move(x)), std::move(diag)};
}

// ---------------------------------------------------------------------------
// Variational problem

VariationalObjective::VariationalObjective(const VariationalProblem& p, int n)
    : problem_(p),
      grid_(p.a, p.b, n),
      weights_(p.alpha, grid_),
      dl_dx_(expr::diff(p.lagrangian, expr::Var::x)),
      dl_dv_(expr::diff(p.lagrangian, expr::Var::v))
{
    if (n < 2) throw DomainError("variational problem needs n >= 2");
    const auto t = grid_.nodes();
    trap_.assign(idx(n) + 1, 0.0);
    trap_[0] = (t[1] - t[0]) / 2.0;
    trap_[idx(n)] = (t[idx(n)] - t[idx(n - 1)]) / 2.0;
    for (int N = 1; N < n; ++N) trap_[idx(N)] = (t[idx(N + 1)] - t[idx(N - 1)]) / 2.0;
}

void VariationalObjective::check_size(std::span<const double> interior) const
{
    if (interior.size() != idx(unknowns()))
        throw DomainError("expected " + std::to_string(unknowns()) + " interior values, got " +
                          std::to_string(interior.size()));
}

std::vector<double> VariationalObjective::assemble(std::span<const double> interior) const
{
    check_size(interior);
    std::vector<double> x;
    x.reserve(interior.size() + 2);
    x.push_back(problem_.x_a);
    x.insert(x.end(), interior.begin(), interior.end());
    x.push_back(problem_.x_b);
    return x;
}

std::vector<double> VariationalObjective::derivatives(std::span<const double> interior) const
{
    const GridSamples s(grid_, assemble(interior));
    const auto at = left_deriv_all(s, weights_);
    std::vector<double> dv(at.size() + 1);
    dv[0] = at[0];
    std::copy(at.begin(), at.end(), dv.begin() + 1);
    return dv;
}

namespace {

double eval_at(const expr::Expr& e, const expr::EvalPoint& pt, int N, const char* what)
{
    try {
        return expr::eval(e, pt);
    } catch (const EvaluationError& err) {
        throw EvaluationError(std::string(what) + " at node N=" + std::to_string(N) + ": " + err.what());
    }
}

}  // namespace

double VariationalObjective::value(std::span<const double> interior) const
{
    const auto x = assemble(interior);
    const auto dv = derivatives(interior);
    const auto t = grid_.nodes();
    const int n = grid_.n();
    const auto L = [&](int N) { return eval_at(problem_.lagrangian, {t[idx(N)], x[idx(N)], dv[idx(N)]}, N, "Lagrangian"); };

    double psi = (L(0) * (t[1] - t[0]) + L(n) * (t[idx(n)] - t[idx(n - 1)])) / 2.0;
    for (int N = 1; N < n; ++N) psi += L(N) / 2.0 * (t[idx(N + 1)] - t[idx(N - 1)]);
    return psi;
}

std::vector<double> VariationalObjective::gradient(std::span<const double> interior) const
{
    const auto x = assemble(interior);
    const auto dv = derivatives(interior);
    const auto t = grid_.nodes();
    const int n = grid_.n();
    const auto& w = weights_;

    // q_M = w_M * dL/dv at node M; node 0 uses D~x_1 so it feeds only x_1.
    std::vector<double> q(idx(n) + 1);
    for (int M = 0; M <= n; ++M)
        q[idx(M)] = trap_[idx(M)] * eval_at(dl_dv_, {t[idx(M)], x[idx(M)], dv[idx(M)]}, M, "dL/dv");

    // sum_{M>=N} q_M psi (w_{M-N+1} s_N - w_{M-N} s_{N+1}), s_k = t_k / exp(k dT),
    // split into two dot products against the leading weights.
    const auto om = w.omegas();
    const std::span<const double> qs(q);
    std::vector<double> g(idx(n - 1));
    for (int N = 1; N < n; ++N) {
        const double sN = t[idx(N)] / w.exp_step(N);
        const double sN1 = t[idx(N + 1)] / w.exp_step(N + 1);
        const double head = kernels::dot(qs.subspan(idx(N), idx(n - N + 1)), om.subspan(1, idx(n - N + 1)));
        const double tail = kernels::dot(qs.subspan(idx(N + 1), idx(n - N)), om.subspan(1, idx(n - N)));
        double gN = w.psi() * (sN * head - sN1 * tail);
        gN += trap_[idx(N)] * eval_at(dl_dx_, {t[idx(N)], x[idx(N)], dv[idx(N)]}, N, "dL/dx");
        g[idx(N - 1)] = gN;
    }
    g[0] += q[0] * left_deriv_coefficient(w, 1, 1);
    return g;
}

std::function<double(std::span<const double>)> build_objective(const VariationalProblem& p, int n)
{
    auto obj = std::make_shared<const VariationalObjective>(p, n);
    return [obj](std::span<const double> interior) { return obj->value(interior); };
}

std::vector<double> gradient(const VariationalProblem& p, int n, std::span<const double> interior)
{
    return VariationalObjective(p, n).gradient(interior);
}

SolveResult solve_variational(const VariationalProblem& p, int n, const numerics::RootConfig& cfg)
{
    const VariationalObjective obj(p, n);
    std::vector<double> guess(idx(n - 1));
    for (int N = 1; N < n; ++N) guess[idx(N - 1)] = p.x_a + (p.x_b - p.x_a) * N / n;

    numerics::NewtonReport rep;
    try {
        rep = numerics::solve_system([&](std::span<const double> xi) { return obj.gradient(xi); }, guess, cfg);
    } catch (const ConvergenceError& e) {
        throw SolveError(std::string("solve_variational: ") + e.what(), -1, e.best_iterate());
    } catch (const EvaluationError& e) {
        throw SolveError(std::string("solve_variational: ") + e.what(), -1, guess);
    }

    SolveDiagnostics diag;
    diag.iterations = rep.iterations;
    diag.residuals.push_back(rep.final_residual_norm);
    return {GridSamples(obj.grid(), obj.assemble(rep.solution)), std::move(diag)};
}

}  // namespace hadfrac
