#include "hadfrac/hadamard.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/kernels.hpp"
#include "hadfrac/numerics.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace hadfrac {

namespace {

void require_same_grid(const GridSamples& s, const WeightTable& w)
{
    if (!(s.grid() == w.grid())) throw DomainError("samples and weight table use different grids");
}

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional order must lie in (0, 1), got " + std::to_string(alpha));
}

WeightTable::WeightTable(FracOrder alpha, LogGrid grid) : alpha_(alpha), grid_(std::move(grid))
{
    const int n = grid_.n();
    const double p = 1.0 - alpha_.value();
    omega_.assign(idx(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) omega_[idx(k)] = std::pow(k, p) - std::pow(k - 1, p);
    omega_rev_.resize(idx(n));
    for (int j = 0; j < n; ++j) omega_rev_[idx(j)] = omega_[idx(n - j)];
    exp_k_.resize(idx(n) + 1);
    for (int k = 0; k <= n; ++k) exp_k_[idx(k)] = std::exp(k * grid_.dT());

    gamma_1ma_ = numerics::gamma(1.0 - alpha_.value());
    gamma_2ma_ = numerics::gamma(2.0 - alpha_.value());
    const double dT = grid_.dT();
    psi_ = std::pow(dT, p) / (grid_.a() * (1.0 - std::exp(-dT)) * gamma_2ma_);
}

double WeightTable::omega(int k) const
{
    if (k < 0 || k > grid_.n()) throw DomainError("weight index " + std::to_string(k) + " out of range");
    return omega_[idx(k)];
}

WeightTable make_weights(FracOrder alpha, const LogGrid& grid) { return WeightTable(alpha, grid); }

std::vector<double> scaled_increments(const GridSamples& samples, const WeightTable& w, int upto)
{
    require_same_grid(samples, w);
    const auto x = samples.values();
    const auto t = w.grid().nodes();
    std::vector<double> d(idx(upto) + 1, 0.0);
    for (int k = 1; k <= upto; ++k) d[idx(k)] = (x[idx(k)] - x[idx(k - 1)]) / w.exp_step(k) * t[idx(k)];
    return d;
}

namespace {

double left_boundary(const GridSamples& s, const WeightTable& w, int N)
{
    const auto& g = w.grid();
    return s[0] / w.gamma_1ma() * std::pow(std::log(g.node(N) / g.a()), -w.alpha().value());
}

double right_boundary(const GridSamples& s, const WeightTable& w, int N)
{
    const auto& g = w.grid();
    return s[g.n()] / w.gamma_1ma() * std::pow(std::log(g.b() / g.node(N)), -w.alpha().value());
}

double left_from_increments(const GridSamples& s, const WeightTable& w, std::span<const double> d, int N)
{
    const int n = w.grid().n();
    const double hist = kernels::dot(w.omegas_reversed().subspan(idx(n - N), idx(N)), d.subspan(1, idx(N)));
    return left_boundary(s, w, N) + w.psi() * hist;
}

double right_from_increments(const GridSamples& s, const WeightTable& w, std::span<const double> d, int N)
{
    const int n = w.grid().n();
    const double fut = kernels::dot(w.omegas().subspan(1, idx(n - N)), d.subspan(idx(N) + 1, idx(n - N)));
    return right_boundary(s, w, N) - w.psi() * fut;
}

}  // namespace

double left_deriv(const GridSamples& samples, const WeightTable& w, int N)
{
    require_same_grid(samples, w);
    if (N < 1 || N > w.grid().n())
        throw DomainError("left_deriv: N must lie in 1..n (the boundary term is singular at N = 0), got " +
                          std::to_string(N));
    const auto d = scaled_increments(samples, w, N);
    return left_from_increments(samples, w, d, N);
}

std::vector<double> left_deriv_all(const GridSamples& samples, const WeightTable& w)
{
    const int n = w.grid().n();
    const auto d = scaled_increments(samples, w, n);
    std::vector<double> out(idx(n));
    for (int N = 1; N <= n; ++N) out[idx(N - 1)] = left_from_increments(samples, w, d, N);
    return out;
}

double left_deriv_simplified(const GridSamples& samples, const WeightTable& w, int N)
{
    require_same_grid(samples, w);
    if (N < 1 || N > w.grid().n()) throw DomainError("left_deriv_simplified: N must lie in 1..n");
    const auto x = samples.values();
    double hist = 0.0;
    for (int k = 1; k <= N; ++k) hist += w.omega(N - k + 1) * (x[idx(k)] - x[idx(k - 1)]);
    return left_boundary(samples, w, N) + w.psi() * w.grid().a() * hist;
}

double right_deriv(const GridSamples& samples, const WeightTable& w, int N)
{
    require_same_grid(samples, w);
    const int n = w.grid().n();
    if (N < 0 || N > n - 1)
        throw DomainError("right_deriv: N must lie in 0..n-1 (the boundary term is singular at N = n), got " +
                          std::to_string(N));
    const auto d = scaled_increments(samples, w, n);
    return right_from_increments(samples, w, d, N);
}

std::vector<double> right_deriv_all(const GridSamples& samples, const WeightTable& w)
{
    const int n = w.grid().n();
    const auto d = scaled_increments(samples, w, n);
    std::vector<double> out(idx(n));
    for (int N = 0; N < n; ++N) out[idx(N)] = right_from_increments(samples, w, d, N);
    return out;
}

double left_deriv_coefficient(const WeightTable& w, int M, int N)
{
    const int n = w.grid().n();
    if (M < 0 || M > n || N < 0 || N > n) throw DomainError("left_deriv_coefficient: index out of range");
    if (N < 1 || M < N) return 0.0;
    const auto t = w.grid().nodes();
    double c = w.omega(M - N + 1) * (t[idx(N)] / w.exp_step(N));
    if (N < M) c -= w.omega(M - N) * (t[idx(N + 1)] / w.exp_step(N + 1));
    return w.psi() * c;
}

double analytic_left_ln(FracOrder alpha, double a, double t)
{
    if (a != 1.0) throw DomainError("analytic_left_ln: closed form only available for base point a = 1");
    if (!(t > a)) throw DomainError("analytic_left_ln: requires t > a");
    return std::pow(std::log(t), 1.0 - alpha.value()) / numerics::gamma(2.0 - alpha.value());
}

namespace {

std::string format_sci(double v)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
    return std::string(buf, r.ptr);
}

// integral_0^U u^(-alpha) h(u) du, via s = u^(1-alpha):
//   = 1/(1-alpha) * integral_0^{U^(1-alpha)} h(s^(1/(1-alpha))) ds
// The transformed integrand is bounded; tanh-sinh absorbs the remaining
// endpoint non-smoothness of s^(1/(1-alpha)).
// `abs_tol` applies to the returned value.
double weakly_singular_integral(const char* who, double alpha, double U, const RealFn& h, double abs_tol)
{
    const double p = 1.0 - alpha;
    const double S = std::pow(U, p);
    const auto integrand = [&](double s) { return h(std::pow(s, 1.0 / p)); };
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    double err = 0.0, l1 = 0.0;
    const double val = rule.integrate(integrand, 0.0, S, 64.0 * std::numeric_limits<double>::epsilon(), &err, &l1) / p;
    err /= p;
    if (!std::isfinite(val) || err > abs_tol)
        throw AccuracyError(std::string(who) + ": quadrature error estimate " + format_sci(err) +
                                " exceeds tolerance " + format_sci(abs_tol),
                            val, err);
    return val;
}

}  // namespace

double oracle_left(FracOrder alpha, const RealFn& x, const RealFn& dx, double a, double t, double tol)
{
    if (!(a > 0.0) || !(t > a)) throw DomainError("oracle_left: requires 0 < a < t");
    if (!(tol > 0.0)) throw DomainError("oracle_left: tol must be positive");
    const double al = alpha.value();
    const double g1 = numerics::gamma(1.0 - al);
    const double U = std::log(t / a);
    const auto h = [&](double u) {
        const double tau = t * std::exp(-u);
        return dx(tau) * tau;
    };
    const double integral = weakly_singular_integral("oracle_left", al, U, h, tol * g1);
    return x(a) / g1 * std::pow(U, -al) + integral / g1;
}

double oracle_right(FracOrder alpha, const RealFn& x, const RealFn& dx, double b, double t, double tol)
{
    if (!(t > 0.0) || !(b > t)) throw DomainError("oracle_right: requires 0 < t < b");
    if (!(tol > 0.0)) throw DomainError("oracle_right: tol must be positive");
    const double al = alpha.value();
    const double g1 = numerics::gamma(1.0 - al);
    const double U = std::log(b / t);
    const auto h = [&](double u) {
        const double tau = t * std::exp(u);
        return dx(tau) * tau;
    };
    const double integral = weakly_singular_integral("oracle_right", al, U, h, tol * g1);
    return x(b) / g1 * std::pow(U, -al) - integral / g1;
}

double error_bound(const WeightTable& w, const ErrorBoundInputs& mb)
{
    if (!(mb.m1 >= 0.0) || !(mb.m2 >= 0.0)) throw DomainError("error_bound: M1 and M2 must be non-negative");
    const auto& g = w.grid();
    return (mb.m1 + 1.5 * mb.m2 * g.b()) / w.gamma_2ma() * (g.b() - g.a()) *
           std::pow(g.dT(), 1.0 - w.alpha().value());
}

}  // namespace hadfrac
