#include "hadfrac/errors.hpp"
#include "hadfrac/numerics.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace hadfrac;
using hadfrac::numerics::RootConfig;
using hadfrac::numerics::solve_scalar;
using hadfrac::numerics::solve_system;
using hadfrac::numerics::system_defaults;

TEST_CASE("gamma: exact and closed-form values")
{
    CHECK(numerics::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(numerics::gamma(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    // sqrt(pi)/2 to 30 digits: 0.886226925452758013649083741671
    CHECK(test::rel_err(numerics::gamma(1.5), 0.886226925452758013649) <= 1e-13);
    CHECK(test::rel_err(numerics::gamma(0.5), std::sqrt(std::numbers::pi)) <= 1e-13);
    CHECK(test::rel_err(numerics::gamma(0.25), 3.62560990822190831193) <= 1e-13);
    CHECK(test::rel_err(numerics::gamma(1.0 / 3.0), 2.67893853470774763365) <= 1e-13);
    CHECK(test::rel_err(numerics::gamma(1.8), 0.931383770980242989) <= 1e-13);
}

TEST_CASE("gamma: recurrence on (0, 1]")
{
    for (int i = 1; i <= 10; ++i) {
        const double x = 0.1 * i;
        CHECK(test::rel_err(numerics::gamma(x + 1.0), x * numerics::gamma(x)) <= 1e-12);
    }
}

TEST_CASE("gamma: domain errors")
{
    CHECK_THROWS_AS(numerics::gamma(0.0), DomainError);
    CHECK_THROWS_AS(numerics::gamma(-0.5), DomainError);
    CHECK_THROWS_AS(numerics::gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(numerics::gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("RootConfig validation")
{
    CHECK_THROWS_AS(solve_scalar([](double x) { return x; }, 0.0, RootConfig{0.0, 1e-12, 10}), DomainError);
    CHECK_THROWS_AS(solve_scalar([](double x) { return x; }, 0.0, RootConfig{1e-12, -1.0, 10}), DomainError);
    CHECK_THROWS_AS(solve_scalar([](double x) { return x; }, 0.0, RootConfig{1e-12, 1e-12, 0}), DomainError);
}

TEST_CASE("solve_scalar: examples")
{
    const RootConfig cfg{};
    CHECK(solve_scalar([](double x) { return x - 3.0; }, 0.0, cfg) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(solve_scalar([](double x) { return x * x - 2.0; }, 1.0, cfg) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const double r = solve_scalar([](double x) { return std::exp(x) - 1.0; }, 0.5, cfg);
    CHECK(std::abs(std::exp(r) - 1.0) <= cfg.abs_tol);
}

TEST_CASE("solve_scalar: falls back to bracketing")
{
    const RootConfig cfg{};
    // Zero slope at the initial guess.
    const double r1 = solve_scalar([](double x) { return x * x * x - 8.0; }, 0.0, cfg);
    CHECK(std::abs(r1 * r1 * r1 - 8.0) <= cfg.abs_tol);
    // Newton from far away on atan overshoots and diverges.
    const double r2 = solve_scalar([](double x) { return std::atan(x - 50.0); }, 0.0, cfg);
    CHECK(std::abs(std::atan(r2 - 50.0)) <= cfg.abs_tol);
}

TEST_CASE("solve_scalar: no root reports best iterate")
{
    try {
        solve_scalar([](double x) { return x * x + 1.0; }, 3.0, RootConfig{1e-12, 1e-14, 20});
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        REQUIRE(e.best_iterate().size() == 1);
        CHECK(e.best_residual() >= 1.0);
    }
    CHECK_THROWS_AS(solve_scalar([](double) { return std::nan(""); }, 0.0, RootConfig{}), DomainError);
}

TEST_CASE("solve_scalar: strictly monotone functions with a root")
{
    auto gen = test::rng(7);
    std::uniform_real_distribution<double> root(-20.0, 20.0), scale(0.01, 50.0), start(-30.0, 30.0);
    const RootConfig cfg{};
    for (int i = 0; i < 200; ++i) {
        const double r = root(gen), c = scale(gen), d = scale(gen), x0 = start(gen);
        const int kind = i % 3;
        const auto g = [=](double x) {
            const double u = x - r;
            switch (kind) {
            case 0: return c * u * u * u + d * u;
            case 1: return std::atan(c * u);
            default: return std::tanh(u) + 1e-3 * d * u;
            }
        };
        const double x = solve_scalar(g, x0, cfg);
        CHECK(std::abs(g(x)) <= cfg.abs_tol);
    }
}

TEST_CASE("solve_system: examples")
{
    const RootConfig cfg = system_defaults();
    const std::vector<double> ones{1.0, 1.0};
    const auto id = solve_system([](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); }, ones, cfg);
    CHECK(id.converged);
    CHECK(std::abs(id.solution[0]) <= 1e-10);
    CHECK(std::abs(id.solution[1]) <= 1e-10);

    const auto lin = solve_system(
        [](std::span<const double> x) { return std::vector<double>{2.0 * x[0] - 2.0, 4.0 * x[1] - 4.0}; },
        std::vector<double>{0.0, 0.0}, cfg);
    CHECK(lin.converged);
    CHECK(lin.iterations == 1);
    CHECK(lin.solution[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin.solution[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin.final_residual_norm <= cfg.abs_tol);
}

TEST_CASE("solve_system: nonlinear system")
{
    const auto rep = solve_system(
        [](std::span<const double> x) {
            return std::vector<double>{x[0] * x[0] + x[1] * x[1] - 4.0, x[0] - x[1]};
        },
        std::vector<double>{1.0, 0.5}, system_defaults());
    CHECK(rep.converged);
    CHECK(rep.solution[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(rep.solution[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("solve_system: nonsingular linear maps converge in at most two iterations")
{
    auto gen = test::rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const RootConfig cfg = system_defaults();
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 6;
        std::vector<double> A(m * m), b(m);
        for (auto& a : A) a = u(gen);
        for (std::size_t i = 0; i < m; ++i) A[i * m + i] += (u(gen) > 0 ? 3.0 : -3.0);  // keep it well conditioned
        for (auto& v : b) v = 5.0 * u(gen);
        const auto G = [&](std::span<const double> x) {
            std::vector<double> r(m);
            for (std::size_t i = 0; i < m; ++i) {
                r[i] = -b[i];
                for (std::size_t j = 0; j < m; ++j) r[i] += A[i * m + j] * x[j];
            }
            return r;
        };
        const auto rep = solve_system(G, std::vector<double>(m, 0.0), cfg);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 2);
        CHECK(rep.final_residual_norm <= cfg.abs_tol);
    }
}

TEST_CASE("solve_system: failures")
{
    // Inconsistent singular system: x0 + x1 = 1 and x0 + x1 = 2.
    CHECK_THROWS_AS(solve_system(
                        [](std::span<const double> x) {
                            return std::vector<double>{x[0] + x[1] - 1.0, x[0] + x[1] - 2.0};
                        },
                        std::vector<double>{0.0, 0.0}, system_defaults()),
                    ConvergenceError);
    // No real root.
    try {
        solve_system([](std::span<const double> x) { return std::vector<double>{x[0] * x[0] + 1.0}; },
                     std::vector<double>{2.0}, RootConfig{1e-10, 1e-14, 30});
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_iterate().size() == 1);
    }
    CHECK_THROWS_AS(solve_system([](std::span<const double>) { return std::vector<double>{}; }, std::vector<double>{},
                                 system_defaults()),
                    DomainError);
}
