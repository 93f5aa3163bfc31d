#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hadfrac {

/// Geometric mesh t_N = a * exp(N * dT) on [a, b], dT = ln(b/a) / n.
/// Uniform in ln t; consecutive nodes have the constant ratio exp(dT).
class LogGrid {
public:
    /// Throws DomainError unless 0 < a < b and n >= 1.
    LogGrid(double a, double b, int n);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int n() const noexcept { return n_; }
    double dT() const noexcept { return dT_; }

    /// t_N for 0 <= N <= n; node(n) is exactly b.
    double node(int N) const;
    std::span<const double> nodes() const noexcept { return nodes_; }

    friend bool operator==(const LogGrid& l, const LogGrid& r) noexcept
    {
        return l.a_ == r.a_ && l.b_ == r.b_ && l.n_ == r.n_;
    }

private:
    double a_, b_;
    int n_;
    double dT_;
    std::vector<double> nodes_;
};

LogGrid make_grid(double a, double b, int n);

/// Values x_0..x_n attached to a grid.
class GridSamples {
public:
    /// Throws DomainError if the length is not n+1 or an entry is not finite.
    GridSamples(LogGrid grid, std::vector<double> values);

    const LogGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int N) const { return values_.at(static_cast<std::size_t>(N)); }

private:
    LogGrid grid_;
    std::vector<double> values_;
};

/// values[N] = f(t_N). Throws EvaluationError naming the node if f is not finite there.
GridSamples sample(const LogGrid& grid, const std::function<double(double)>& f);

/// (1/n) * sum_{k=1..n} |x_k - y_k|. Index 0 is excluded.
double mean_abs_error(const GridSamples& x, const GridSamples& y);

/// (1/(n+1)) * sum_{k=0..n} |x_k - y_k|, the plain mean over every node.
/// This is the normalisation that reproduces the reference error table for
/// the initial-value example.
double node_mean_abs_error(const GridSamples& x, const GridSamples& y);

}  // namespace hadfrac
