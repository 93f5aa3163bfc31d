#include "hadfrac/convergence.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/expr.hpp"
#include "hadfrac/solvers.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <tuple>

namespace hadfrac {

std::string_view case_name(StudyCase c) noexcept
{
    switch (c) {
    case StudyCase::deriv: return "deriv";
    case StudyCase::fde: return "fde";
    case StudyCase::varmin: return "varmin";
    }
    return "?";
}

bool ConvergenceReport::all_succeeded() const noexcept
{
    return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.error.has_value(); });
}

std::string format_csv_double(double value)
{
    std::array<char, 40> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

namespace {

expr::Expr compile(const std::string& src, double alpha)
{
    return expr::parse(expr::substitute_placeholder(src, "A", alpha));
}

double exact_at(const expr::Expr& e, double t) { return expr::eval(e, {t, 0.0, 0.0}); }

double run_cell(const ConvergenceSpec& spec, FracOrder alpha, int n, ErrorNorm norm)
{
    const expr::Expr exact = compile(spec.exact, alpha.value());
    const LogGrid grid(spec.a, spec.b, n);

    if (spec.study == StudyCase::deriv) {
        const expr::Expr fn = compile(spec.expression, alpha.value());
        const GridSamples xs = sample(grid, [&](double t) { return exact_at(fn, t); });
        const WeightTable w(alpha, grid);
        const auto approx = left_deriv_all(xs, w);
        double sum = 0.0;
        for (int N = 1; N <= n; ++N) sum += std::abs(approx[static_cast<std::size_t>(N - 1)] - exact_at(exact, grid.node(N)));
        return sum / n;
    }

    GridSamples solution = [&] {
        if (spec.study == StudyCase::fde) {
            FdeProblem p{spec.a, spec.b, alpha, spec.x0, compile(spec.expression, alpha.value())};
            return solve_fde(p, n).samples;
        }
        VariationalProblem p{spec.a, spec.b, alpha, spec.x0, spec.xb, compile(spec.expression, alpha.value())};
        return solve_variational(p, n).samples;
    }();
    const GridSamples reference = sample(grid, [&](double t) { return exact_at(exact, t); });
    return norm == ErrorNorm::nodes ? node_mean_abs_error(solution, reference) : mean_abs_error(solution, reference);
}

}  // namespace

ConvergenceReport run_convergence(const ConvergenceSpec& spec)
{
    if (spec.alphas.empty() || spec.ns.empty()) throw DomainError("convergence study needs at least one alpha and one n");
    std::vector<FracOrder> orders;
    for (double a : spec.alphas) orders.emplace_back(a);
    for (int n : spec.ns)
        if (n < (spec.study == StudyCase::varmin ? 2 : 1)) throw DomainError("mesh size n too small: " + std::to_string(n));
    (void)LogGrid(spec.a, spec.b, 1);

    ErrorNorm norm = spec.norm;
    if (norm == ErrorNorm::automatic) norm = spec.study == StudyCase::deriv ? ErrorNorm::interior : ErrorNorm::nodes;
    if (spec.study == StudyCase::deriv && norm == ErrorNorm::nodes)
        throw DomainError("the derivative is undefined at t_0; derivative studies use the interior norm");

    // Syntax is checked up front so malformed input is a usage error, not N failed cells.
    for (const auto& o : orders) {
        (void)compile(spec.expression, o.value());
        (void)compile(spec.exact, o.value());
    }

    ConvergenceReport report;
    for (const auto& alpha : orders) {
        for (int n : spec.ns) {
            ConvergenceRow row;
            row.study = spec.study;
            row.alpha = alpha.value();
            row.n = n;
            row.bound = error_bound(WeightTable(alpha, LogGrid(spec.a, spec.b, n)), spec.bound_inputs);
            try {
                row.error = run_cell(spec, alpha, n, norm);
            } catch (const std::exception& e) {
                row.failure = e.what();
            }
            report.rows.push_back(std::move(row));
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const ConvergenceRow& l, const ConvergenceRow& r) {
        return std::tie(l.study, l.alpha, l.n) < std::tie(r.study, r.alpha, r.n);
    });
    return report;
}

void write_csv(const ConvergenceReport& report, std::ostream& os)
{
    os << "case,alpha,n,error,bound\n";
    for (const auto& r : report.rows) {
        os << case_name(r.study) << ',' << format_csv_double(r.alpha) << ',' << r.n << ','
           << (r.error ? format_csv_double(*r.error) : std::string("FAIL")) << ',' << format_csv_double(r.bound)
           << '\n';
    }
}

void write_svg(const ConvergenceReport& report, std::ostream& os)
{
    constexpr double W = 640, H = 440, left = 70, right = 150, top = 30, bottom = 50;
    constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    std::map<std::pair<StudyCase, double>, std::vector<std::pair<double, double>>> series;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : report.rows) {
        if (!r.error || !(*r.error > 0.0)) continue;
        const double lx = std::log10(r.n), ly = std::log10(*r.error);
        series[{r.study, r.alpha}].emplace_back(lx, ly);
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
    }
    if (series.empty()) {
        xmin = 0, xmax = 1, ymin = -1, ymax = 0;
    }
    xmin = std::floor(xmin * 10) / 10, xmax = std::ceil(xmax * 10) / 10;
    ymin = std::floor(ymin), ymax = std::ceil(ymax);
    if (xmax <= xmin) xmax = xmin + 0.1;
    if (ymax <= ymin) ymax = ymin + 1;

    const auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * (W - left - right); };
    const auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * (H - top - bottom); };
    const auto num = [](double v) { return expr::format_double(std::round(v * 100) / 100); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
       << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double e = ymin; e <= ymax + 1e-9; e += 1.0) {
        const double y = py(e);
        os << "<line x1=\"" << left << "\" y1=\"" << num(y) << "\" x2=\"" << W - right << "\" y2=\"" << num(y)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << static_cast<int>(e)
           << "</text>\n";
    }
    std::vector<int> ns;
    for (const auto& r : report.rows) ns.push_back(r.n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (int n : ns) {
        const double x = px(std::log10(n));
        if (x < left - 1e-9 || x > W - right + 1e-9) continue;
        os << "<text x=\"" << num(x) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">" << n
           << "</text>\n";
    }
    os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">n (log scale)</text>\n";
    os << "<text x=\"16\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (top + H - bottom) / 2 << ")\">error (log scale)</text>\n";

    std::size_t k = 0;
    for (const auto& [key, pts] : series) {
        const char* colour = palette[k % palette.size()];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << num(px(pts[i].first)) << ',' << num(py(pts[i].second));
        os << "\"/>\n";
        for (const auto& [lx, ly] : pts)
            os << "<circle cx=\"" << num(px(lx)) << "\" cy=\"" << num(py(ly)) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
        const double ly = top + 16 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - right + 32 << "\" y2=\""
           << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - right + 38 << "\" y=\"" << ly << "\">" << case_name(key.first)
           << " &#945;=" << expr::format_double(key.second) << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
}

}  // namespace hadfrac
