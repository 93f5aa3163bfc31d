#include "hadfrac/numerics.hpp"

#include "hadfrac/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hadfrac::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm_inf(std::span<const double> v)
{
    double m = 0.0;
    for (double e : v) {
        if (!std::isfinite(e)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(e));
    }
    return m;
}

// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign.
double bisect(const ScalarFn& g, double lo, double flo, double hi, double fhi, const RootConfig& cfg)
{
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    for (int it = 0; it < 2000; ++it) {
        if (fbest <= cfg.abs_tol) return best;
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double fm = g(mid);
        if (!std::isfinite(fm)) break;
        if (std::abs(fm) < fbest) {
            best = mid;
            fbest = std::abs(fm);
        }
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if (fbest <= cfg.abs_tol) return best;
    throw ConvergenceError("bisection collapsed without meeting abs_tol", {best}, fbest);
}

}  // namespace

void RootConfig::validate() const
{
    if (!(abs_tol > 0.0) || !(step_tol > 0.0) || max_iter < 1)
        throw DomainError("RootConfig requires abs_tol > 0, step_tol > 0, max_iter >= 1");
}

double gamma(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("gamma: argument must be positive and finite, got " + std::to_string(x));
    // glibc tgamma is accurate to a few ulp on (0, 2].
    return std::tgamma(x);
}

double solve_scalar(const ScalarFn& g, double x0, const RootConfig& cfg)
{
    cfg.validate();
    double x = x0;
    double fx = g(x);
    if (!std::isfinite(fx)) throw DomainError("solve_scalar: g is not finite at the initial guess");

    double best = x, fbest = std::abs(fx);
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (std::abs(fx) <= cfg.abs_tol) return x;
        const double h = std::cbrt(kEps) * std::max(1.0, std::abs(x));
        const double slope = (g(x + h) - g(x - h)) / (2.0 * h);
        if (!std::isfinite(slope) || std::abs(slope) < 1e-300) break;

        const double xn = x - fx / slope;
        const double fn = g(xn);
        if (!std::isfinite(fn) || std::abs(fn) >= std::abs(fx)) break;
        const bool tiny_step = std::abs(xn - x) <= cfg.step_tol * std::max(1.0, std::abs(x));
        x = xn;
        fx = fn;
        if (std::abs(fx) < fbest) {
            best = x;
            fbest = std::abs(fx);
        }
        if (tiny_step) break;
    }
    if (fbest <= cfg.abs_tol) return best;

    // Newton stalled: grow a bracket around the best point.
    const double fcentre = g(best);
    double width = 1e-3 * std::max(1.0, std::abs(best));
    for (int it = 0; it < 200; ++it, width *= 2.0) {
        const double lo = best - width, hi = best + width;
        const double flo = g(lo), fhi = g(hi);
        if (std::isfinite(flo) && std::signbit(flo) != std::signbit(fcentre))
            return bisect(g, lo, flo, best, fcentre, cfg);
        if (std::isfinite(fhi) && std::signbit(fhi) != std::signbit(fcentre))
            return bisect(g, best, fcentre, hi, fhi, cfg);
        if (!std::isfinite(width)) break;
    }
    throw ConvergenceError("solve_scalar: no root found and no sign change in the expanded bracket",
                           {best}, fbest);
}

NewtonReport solve_system(const VectorFn& G, std::span<const double> x0, const RootConfig& cfg)
{
    cfg.validate();
    const auto m = static_cast<Eigen::Index>(x0.size());
    if (m < 1) throw DomainError("solve_system: empty initial guess");

    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> gx = G(x);
    if (gx.size() != x.size()) throw DomainError("solve_system: G must map R^m to R^m");
    double res = norm_inf(gx);
    if (!std::isfinite(res)) throw DomainError("solve_system: G is not finite at the initial guess");

    NewtonReport rep;
    Eigen::MatrixXd jac(m, m);
    std::vector<double> probe(x.size()), trial(x.size());

    for (int it = 0; it < cfg.max_iter; ++it) {
        if (res <= cfg.abs_tol) {
            rep.converged = true;
            break;
        }

        for (Eigen::Index j = 0; j < m; ++j) {
            probe = x;
            const double xj = x[j];
            volatile double shifted = xj + std::sqrt(kEps) * std::max(1.0, std::abs(xj));
            const double h = shifted - xj;
            probe[j] = shifted;
            const std::vector<double> gp = G(probe);
            for (Eigen::Index i = 0; i < m; ++i) jac(i, j) = (gp[i] - gx[i]) / h;
        }

        const Eigen::Map<const Eigen::VectorXd> rhs(gx.data(), m);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (!lu.isInvertible()) {
            const double lambda = 1e-10 * std::max(1.0, jac.cwiseAbs().rowwise().sum().maxCoeff());
            lu.compute(jac + lambda * Eigen::MatrixXd::Identity(m, m));
            if (!lu.isInvertible())
                throw ConvergenceError("solve_system: singular Jacobian", x, res);
        }
        const Eigen::VectorXd delta = -lu.solve(rhs);

        double step = 1.0;
        bool accepted = false;
        std::vector<double> gtrial;
        for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * delta[static_cast<Eigen::Index>(i)];
            gtrial = G(trial);
            if (norm_inf(gtrial) < res) {
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw ConvergenceError("solve_system: line search found no decrease (residual " +
                                       std::to_string(res) + ")",
                                   x, res);

        const double step_norm = step * delta.cwiseAbs().maxCoeff();
        x.swap(trial);
        gx = std::move(gtrial);
        res = norm_inf(gx);
        ++rep.iterations;

        if (step_norm <= cfg.step_tol * std::max(1.0, norm_inf(x))) {
            if (res > cfg.abs_tol)
                throw ConvergenceError("solve_system: stalled with residual " + std::to_string(res), x, res);
            rep.converged = true;
            break;
        }
    }
    if (!rep.converged && res <= cfg.abs_tol) rep.converged = true;
    if (!rep.converged)
        throw ConvergenceError("solve_system: max_iter exceeded with residual " + std::to_string(res), x, res);

    rep.solution = std::move(x);
    rep.final_residual_norm = res;
    return rep;
}

}  // namespace hadfrac::numerics
