#include "hadfrac/errors.hpp"
#include "hadfrac/grid.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hadfrac;

TEST_CASE("LogGrid: nodes and step")
{
    const LogGrid g(1.0, 2.0, 10);
    CHECK(g.n() == 10);
    CHECK(g.dT() == doctest::Approx(std::log(2.0) / 10.0).epsilon(1e-15));
    CHECK(g.node(0) == 1.0);
    CHECK(g.node(10) == 2.0);
    CHECK(g.node(5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(g.nodes().size() == 11);
    CHECK_THROWS(g.node(11));
    CHECK_THROWS(g.node(-1));
    CHECK(make_grid(1.0, 2.0, 10) == g);
    CHECK_FALSE(make_grid(1.0, 2.0, 11) == g);
}

TEST_CASE("LogGrid: invalid input")
{
    CHECK_THROWS_AS(LogGrid(0.0, 2.0, 10), DomainError);
    CHECK_THROWS_AS(LogGrid(-1.0, 2.0, 10), DomainError);
    CHECK_THROWS_AS(LogGrid(2.0, 2.0, 10), DomainError);
    CHECK_THROWS_AS(LogGrid(3.0, 2.0, 10), DomainError);
    CHECK_THROWS_AS(LogGrid(1.0, 2.0, 0), DomainError);
    CHECK_THROWS_AS(LogGrid(1.0, std::numeric_limits<double>::infinity(), 4), DomainError);
}

TEST_CASE("LogGrid: constant ratio and exact endpoints")
{
    auto gen = test::rng(5);
    std::uniform_real_distribution<double> ua(0.01, 10.0), ur(1.01, 50.0);
    std::uniform_int_distribution<int> un(1, 500);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(gen), b = a * ur(gen);
        const int n = un(gen);
        const LogGrid g(a, b, n);
        CHECK(g.node(0) == a);
        CHECK(g.node(n) == b);
        const double ratio = std::exp(g.dT());
        for (int k = 1; k <= n; ++k) {
            CHECK(g.node(k) > g.node(k - 1));
            CHECK(std::abs(g.node(k) / g.node(k - 1) - ratio) <= 1e-12 * ratio);
        }
    }
}

TEST_CASE("GridSamples validation and sampling")
{
    const LogGrid g(1.0, 2.0, 4);
    CHECK_THROWS_AS(GridSamples(g, {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(GridSamples(g, {1, 2, 3, 4, std::nan("")}), DomainError);
    const auto s = sample(g, [](double t) { return t * t; });
    CHECK(s[0] == 1.0);
    CHECK(s[4] == 4.0);
    try {
        sample(g, [](double t) { return t > 1.5 ? std::log(-1.0) : 0.0; });
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(std::string(e.what()).find("N=") != std::string::npos);
    }
}

TEST_CASE("error norms")
{
    const LogGrid g(1.0, 2.0, 4);
    const GridSamples x(g, {10, 1, 2, 3, 4});
    const GridSamples y(g, {0, 2, 2, 5, 4});
    CHECK(mean_abs_error(x, y) == doctest::Approx(3.0 / 4.0));
    CHECK(node_mean_abs_error(x, y) == doctest::Approx(13.0 / 5.0));
    CHECK(mean_abs_error(x, x) == 0.0);
    const GridSamples z(LogGrid(1.0, 3.0, 4), {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(mean_abs_error(x, z), DomainError);
    CHECK_THROWS_AS(node_mean_abs_error(x, z), DomainError);
}

TEST_CASE("error norms agree when the index-0 difference vanishes")
{
    auto gen = test::rng(9);
    std::normal_distribution<double> u;
    for (int n : {1, 3, 17, 64}) {
        const LogGrid g(1.0, 5.0, n);
        std::vector<double> a(n + 1), b(n + 1);
        for (int k = 0; k <= n; ++k) a[k] = u(gen), b[k] = u(gen);
        b[0] = a[0];
        const GridSamples x(g, a), y(g, b);
        CHECK(node_mean_abs_error(x, y) * (n + 1) == doctest::Approx(mean_abs_error(x, y) * n).epsilon(1e-13));
    }
}
