#include "hadfrac/grid.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/kernels.hpp"

#include <cmath>
#include <string>

namespace hadfrac {

LogGrid::LogGrid(double a, double b, int n) : a_(a), b_(b), n_(n)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0) || !(b > a))
        throw DomainError("LogGrid requires 0 < a < b");
    if (n < 1) throw DomainError("LogGrid requires n >= 1");
    dT_ = std::log(b / a) / n;
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int N = 0; N <= n; ++N) nodes_[static_cast<std::size_t>(N)] = a * std::exp(N * dT_);
    // exp(n*dT) is b/a only up to rounding; pin the endpoints.
    nodes_.front() = a;
    nodes_.back() = b;
}

double LogGrid::node(int N) const
{
    if (N < 0 || N > n_) throw DomainError("node index " + std::to_string(N) + " outside 0.." + std::to_string(n_));
    return nodes_[static_cast<std::size_t>(N)];
}

LogGrid make_grid(double a, double b, int n) { return LogGrid(a, b, n); }

GridSamples::GridSamples(LogGrid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values))
{
    if (values_.size() != static_cast<std::size_t>(grid_.n()) + 1)
        throw DomainError("GridSamples: expected " + std::to_string(grid_.n() + 1) + " values, got " +
                          std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i])) throw DomainError("GridSamples: value " + std::to_string(i) + " is not finite");
}

GridSamples sample(const LogGrid& grid, const std::function<double(double)>& f)
{
    std::vector<double> v(grid.nodes().size());
    for (int N = 0; N <= grid.n(); ++N) {
        const double t = grid.node(N);
        const double y = f(t);
        if (!std::isfinite(y))
            throw EvaluationError("sample: non-finite value at node N=" + std::to_string(N) + " (t=" +
                                  std::to_string(t) + ")");
        v[static_cast<std::size_t>(N)] = y;
    }
    return GridSamples(grid, std::move(v));
}

namespace {
void require_same_grid(const GridSamples& x, const GridSamples& y)
{
    if (!(x.grid() == y.grid())) throw DomainError("error norm: samples live on different grids");
}
}  // namespace

double mean_abs_error(const GridSamples& x, const GridSamples& y)
{
    require_same_grid(x, y);
    const int n = x.grid().n();
    return kernels::abs_diff_sum(x.values().subspan(1), y.values().subspan(1)) / n;
}

double node_mean_abs_error(const GridSamples& x, const GridSamples& y)
{
    require_same_grid(x, y);
    const int n = x.grid().n();
    return kernels::abs_diff_sum(x.values(), y.values()) / (n + 1);
}

}  // namespace hadfrac
