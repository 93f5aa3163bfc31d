#include "hadfrac/errors.hpp"
#include "hadfrac/hadamard.hpp"
#include "hadfrac/numerics.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hadfrac;

TEST_CASE("FracOrder range")
{
    CHECK(FracOrder(0.5).value() == 0.5);
    CHECK_THROWS_AS(FracOrder(0.0), DomainError);
    CHECK_THROWS_AS(FracOrder(1.0), DomainError);
    CHECK_THROWS_AS(FracOrder(-0.2), DomainError);
    CHECK_THROWS_AS(FracOrder(std::nan("")), DomainError);
}

TEST_CASE("weights and psi")
{
    const WeightTable w(FracOrder(0.5), LogGrid(1.0, 2.0, 10));
    CHECK(w.omega(0) == 0.0);
    CHECK(w.omega(1) == 1.0);
    CHECK(w.omega(2) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(w.omega(10) == doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-14));
    // mpmath, 30 digits
    CHECK(test::rel_err(w.psi(), 4.43615682966354661325) <= 1e-13);
    CHECK(w.exp_step(0) == 1.0);
    const auto rev = w.omegas_reversed();
    REQUIRE(rev.size() == 10);
    CHECK(rev[0] == w.omega(10));
    CHECK(rev[9] == w.omega(1));
}

TEST_CASE("weights are positive and decreasing and telescope")
{
    for (double alpha : {0.05, 0.2, 0.5, 0.9, 0.99}) {
        const int n = 300;
        const WeightTable w(FracOrder(alpha), LogGrid(1.0, 3.0, n));
        double sum = 0.0;
        for (int k = 1; k <= n; ++k) {
            CHECK(w.omega(k) > 0.0);
            if (k > 1) CHECK(w.omega(k) < w.omega(k - 1));
            sum += w.omega(k);
        }
        CHECK(sum == doctest::Approx(std::pow(n, 1.0 - alpha)).epsilon(1e-12));
    }
}

TEST_CASE("error bound values")
{
    const LogGrid g10(1.0, 2.0, 10), g20(1.0, 2.0, 20);
    const FracOrder a(0.5);
    CHECK(test::rel_err(error_bound(WeightTable(a, g10), {1.0, 1.0}), 1.18830460782451323) <= 1e-12);
    CHECK(test::rel_err(error_bound(WeightTable(a, g20), {1.0, 1.0}), 0.840258246307934248) <= 1e-12);
    CHECK(error_bound(WeightTable(a, g10), {0.0, 0.0}) == 0.0);
}

TEST_CASE("analytic derivative of ln")
{
    CHECK(test::rel_err(analytic_left_ln(FracOrder(0.5), 1.0, 2.0), 0.93943727869965133377) <= 1e-14);
    CHECK(test::rel_err(analytic_left_ln(FracOrder(0.2), 1.0, 2.0), 0.80081408413792920903) <= 1e-14);
    CHECK(test::rel_err(analytic_left_ln(FracOrder(0.7), 1.0, 1.5), 0.84989596831348064217) <= 1e-14);
    CHECK_THROWS_AS(analytic_left_ln(FracOrder(0.5), 2.0, 3.0), DomainError);
    CHECK_THROWS_AS(analytic_left_ln(FracOrder(0.5), 1.0, 1.0), DomainError);
}

TEST_CASE("discrete derivative of a constant is the boundary term")
{
    const LogGrid g(1.0, 2.0, 16);
    const auto c = sample(g, [](double) { return 3.0; });
    for (double alpha : {0.2, 0.5, 0.9}) {
        const WeightTable w(FracOrder(alpha), g);
        for (int N = 1; N <= 16; ++N) {
            const double want = 3.0 / w.gamma_1ma() * std::pow(std::log(g.node(N)), -alpha);
            CHECK(left_deriv(c, w, N) == doctest::Approx(want).epsilon(1e-14));
        }
        for (int N = 0; N < 16; ++N) {
            const double want = 3.0 / w.gamma_1ma() * std::pow(std::log(2.0 / g.node(N)), -alpha);
            CHECK(right_deriv(c, w, N) == doctest::Approx(want).epsilon(1e-14));
        }
    }
}

TEST_CASE("discrete left derivative of ln converges with the bound")
{
    const FracOrder alpha(0.5);
    const LogGrid g(1.0, 2.0, 10);
    const WeightTable w(alpha, g);
    const auto xs = sample(g, [](double t) { return std::log(t); });
    const double bound = error_bound(w, {1.0, 1.0});
    for (int N = 1; N <= 10; ++N) {
        const double err = std::abs(left_deriv(xs, w, N) - analytic_left_ln(alpha, 1.0, g.node(N)));
        CHECK(err <= bound);
    }
    CHECK(std::abs(left_deriv(xs, w, 10) - 0.93943727869965133377) < 0.1);
}

TEST_CASE("right derivative of ln at t = a against the oracle")
{
    const double want = -0.469718639349825658923;
    const double oracle = oracle_right(FracOrder(0.5), [](double t) { return std::log(t); },
                                       [](double t) { return 1.0 / t; }, 2.0, 1.0, 1e-12);
    CHECK(std::abs(oracle - want) <= 1e-11);
    const LogGrid g(1.0, 2.0, 400);
    const WeightTable w(FracOrder(0.5), g);
    const auto xs = sample(g, [](double t) { return std::log(t); });
    CHECK(std::abs(right_deriv(xs, w, 0) - want) <= error_bound(w, {1.0, 1.0}));
}

TEST_CASE("oracle values")
{
    const auto id = [](double t) { return t; };
    const auto one = [](double) { return 1.0; };
    const auto sq = [](double t) { return t * t; };
    const auto dsq = [](double t) { return 2.0 * t; };
    const double lin[3] = {2.12600035323779903, 2.19959696870408114, 2.06508519353394367690};
    const double quad[3] = {4.67644914400384528, 5.79207377612769552, 7.51060771652050751336};
    const double alphas[3] = {0.2, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
        const FracOrder a(alphas[i]);
        CHECK(std::abs(oracle_left(a, id, one, 1.0, 2.0, 1e-12) - lin[i]) <= 1e-11);
        CHECK(std::abs(oracle_left(a, sq, dsq, 1.0, 2.0, 1e-12) - quad[i]) <= 1e-11);
        const double ln_exact = analytic_left_ln(a, 1.0, 2.0);
        const double ln_oracle = oracle_left(a, [](double t) { return std::log(t); },
                                             [](double t) { return 1.0 / t; }, 1.0, 2.0, 1e-12);
        CHECK(std::abs(ln_oracle - ln_exact) <= 1e-11);
    }
    CHECK_THROWS_AS(oracle_left(FracOrder(0.5), id, one, 1.0, 1.0, 1e-12), DomainError);
}

TEST_CASE("simplified form agrees with the full form")
{
    auto gen = test::rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0), ua(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial * 3;
        const LogGrid g(0.5 + trial * 0.1, 3.0 + trial * 0.2, n);
        std::vector<double> v(n + 1);
        for (auto& x : v) x = u(gen);
        const GridSamples xs(g, v);
        const WeightTable w(FracOrder(ua(gen)), g);
        for (int N = 1; N <= n; ++N) {
            const double full = left_deriv(xs, w, N), simp = left_deriv_simplified(xs, w, N);
            CHECK(std::abs(full - simp) <= 1e-10 * std::max(1.0, std::abs(full)));
        }
    }
}

TEST_CASE("linearity of both operators")
{
    auto gen = test::rng(22);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const int n = 40;
    const LogGrid g(1.0, 4.0, n);
    const WeightTable w(FracOrder(0.35), g);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> x(n + 1), y(n + 1), z(n + 1);
        const double c1 = u(gen), c2 = u(gen);
        for (int k = 0; k <= n; ++k) {
            x[k] = u(gen), y[k] = u(gen);
            z[k] = c1 * x[k] + c2 * y[k];
        }
        const GridSamples X(g, x), Y(g, y), Z(g, z);
        const auto lx = left_deriv_all(X, w), ly = left_deriv_all(Y, w), lz = left_deriv_all(Z, w);
        const auto rx = right_deriv_all(X, w), ry = right_deriv_all(Y, w), rz = right_deriv_all(Z, w);
        for (int i = 0; i < n; ++i) {
            const double sl = std::abs(c1 * lx[i]) + std::abs(c2 * ly[i]) + 1.0;
            const double sr = std::abs(c1 * rx[i]) + std::abs(c2 * ry[i]) + 1.0;
            CHECK(std::abs(lz[i] - (c1 * lx[i] + c2 * ly[i])) <= 1e-12 * sl);
            CHECK(std::abs(rz[i] - (c1 * rx[i] + c2 * ry[i])) <= 1e-12 * sr);
        }
    }
}

TEST_CASE("left derivative at t_N ignores later samples; right ignores earlier")
{
    auto gen = test::rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 25;
    const LogGrid g(1.0, 2.0, n);
    const WeightTable w(FracOrder(0.6), g);
    std::vector<double> base(n + 1);
    for (auto& v : base) v = u(gen);
    const GridSamples X(g, base);
    for (int N = 1; N < n; ++N) {
        auto pert = base;
        for (int k = N + 1; k <= n; ++k) pert[k] += 10.0 * u(gen);
        CHECK(left_deriv(GridSamples(g, pert), w, N) == left_deriv(X, w, N));
    }
    for (int N = 1; N < n; ++N) {
        auto pert = base;
        for (int k = 0; k < N; ++k) pert[k] += 10.0 * u(gen);
        CHECK(right_deriv(GridSamples(g, pert), w, N) == right_deriv(X, w, N));
    }
}

TEST_CASE("coefficient matches the finite-difference sensitivity")
{
    const int n = 12;
    const LogGrid g(1.0, 2.5, n);
    const WeightTable w(FracOrder(0.4), g);
    std::vector<double> base(n + 1);
    for (int k = 0; k <= n; ++k) base[k] = std::sin(0.3 * k);
    for (int M = 1; M <= n; ++M) {
        for (int N = 0; N <= n; ++N) {
            auto up = base;
            up[N] += 1.0;
            const double diff = left_deriv(GridSamples(g, up), w, M) - left_deriv(GridSamples(g, base), w, M);
            if (N == 0) continue;  // x_0 also enters through the boundary term
            CHECK(std::abs(diff - left_deriv_coefficient(w, M, N)) <= 1e-11 * std::max(1.0, std::abs(diff)));
            if (M < N) CHECK(left_deriv_coefficient(w, M, N) == 0.0);
        }
    }
}

TEST_CASE("pointwise error within the bound for smooth functions")
{
    struct Case {
        RealFn x, dx;
        ErrorBoundInputs mb;
    };
    const Case cases[] = {
        {[](double t) { return std::log(t); }, [](double t) { return 1.0 / t; }, {1.0, 1.0}},
        {[](double t) { return t; }, [](double) { return 1.0; }, {1.0, 0.0}},
        {[](double t) { return t * t; }, [](double t) { return 2.0 * t; }, {4.0, 2.0}},
    };
    for (const auto& c : cases) {
        for (double alpha : {0.2, 0.5, 0.9}) {
            const LogGrid g(1.0, 2.0, 20);
            const WeightTable w(FracOrder(alpha), g);
            const auto xs = sample(g, c.x);
            const double bound = error_bound(w, c.mb);
            for (int N = 1; N <= 20; N += 3) {
                const double ref = oracle_left(FracOrder(alpha), c.x, c.dx, 1.0, g.node(N), 1e-12);
                CHECK(std::abs(left_deriv(xs, w, N) - ref) <= bound);
            }
        }
    }
}

TEST_CASE("length and index checks")
{
    const LogGrid g(1.0, 2.0, 5);
    const WeightTable w(FracOrder(0.5), g);
    const auto xs = sample(g, [](double t) { return t; });
    CHECK_THROWS_AS(left_deriv(xs, w, 0), DomainError);
    CHECK_THROWS_AS(left_deriv(xs, w, 6), DomainError);
    CHECK_THROWS_AS(right_deriv(xs, w, 5), DomainError);
    const auto other = sample(LogGrid(1.0, 2.0, 6), [](double t) { return t; });
    CHECK_THROWS_AS(left_deriv(other, w, 1), DomainError);
}
