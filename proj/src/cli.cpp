#include "hadfrac/cli.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/expr.hpp"
#include "hadfrac/kernels.hpp"
#include "hadfrac/solvers.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace hadfrac::cli {

namespace {

std::string fmt(double v) { return format_csv_double(v); }

expr::Expr compile(const std::string& src, double alpha, const char* flag)
{
    try {
        return expr::parse(expr::substitute_placeholder(src, "A", alpha));
    } catch (const SyntaxError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

void require_t_only(const expr::Expr& e, const char* flag)
{
    if (expr::depends_on(e, expr::Var::x) || expr::depends_on(e, expr::Var::v))
        throw UsageError(std::string(flag) + " must be an expression in t only");
}

FracOrder order(double alpha)
{
    try {
        return FracOrder(alpha);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--alpha: ") + e.what());
    }
}

LogGrid grid_of(const Interval& iv, int n)
{
    try {
        return LogGrid(iv.a, iv.b, n);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

double eval_t(const expr::Expr& e, double t) { return expr::eval(e, {t, 0.0, 0.0}); }

void write_solution(const GridSamples& s, std::ostream& out)
{
    out << "N,t,x\n";
    for (int N = 0; N <= s.grid().n(); ++N) out << N << ',' << fmt(s.grid().node(N)) << ',' << fmt(s[N]) << '\n';
}

}  // namespace

void cmd_deriv(const DerivOptions& opt, std::ostream& out)
{
    const FracOrder alpha = order(opt.alpha);
    const LogGrid grid = grid_of(opt.interval, opt.n);
    const expr::Expr fn = compile(opt.func, opt.alpha, "--func");
    require_t_only(fn, "--func");
    std::optional<expr::Expr> exact;
    if (opt.exact) {
        exact = compile(*opt.exact, opt.alpha, "--exact");
        require_t_only(*exact, "--exact");
    }

    const GridSamples xs = sample(grid, [&](double t) { return eval_t(fn, t); });
    const WeightTable w(alpha, grid);
    const auto approx = opt.right ? right_deriv_all(xs, w) : left_deriv_all(xs, w);
    const int first = opt.right ? 0 : 1;

    out << "N,t,approx" << (exact ? ",exact,abs_err" : "") << '\n';
    for (std::size_t i = 0; i < approx.size(); ++i) {
        const int N = first + static_cast<int>(i);
        const double t = grid.node(N);
        out << N << ',' << fmt(t) << ',' << fmt(approx[i]);
        if (exact) {
            const double ex = eval_t(*exact, t);
            out << ',' << fmt(ex) << ',' << fmt(std::abs(approx[i] - ex));
        }
        out << '\n';
    }
}

void cmd_fde(const FdeOptions& opt, std::ostream& out)
{
    (void)grid_of(opt.interval, opt.n);
    const FdeProblem p{opt.interval.a, opt.interval.b, order(opt.alpha), opt.x0,
                       compile(opt.residual, opt.alpha, "--residual")};
    write_solution(solve_fde(p, opt.n).samples, out);
}

void cmd_varmin(const VarminOptions& opt, std::ostream& out)
{
    if (opt.n < 2) throw UsageError("varmin needs --n >= 2");
    (void)grid_of(opt.interval, opt.n);
    const VariationalProblem p{opt.interval.a, opt.interval.b, order(opt.alpha), opt.xa, opt.xb,
                               compile(opt.lagrangian, opt.alpha, "--lagrangian")};
    std::optional<VariationalObjective> probe;
    try {
        probe.emplace(p, opt.n);
    } catch (const UnsupportedDerivative& e) {
        throw UsageError(std::string("--lagrangian: ") + e.what());
    }
    write_solution(solve_variational(p, opt.n).samples, out);
}

ConvergenceReport cmd_converge(const ConvergenceSpec& spec, std::ostream& out, std::ostream* plot)
{
    ConvergenceReport report;
    try {
        report = run_convergence(spec);
    } catch (const SyntaxError& e) {
        throw UsageError(e.what());
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    write_csv(report, out);
    if (plot) write_svg(report, *plot);
    return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discrete Hadamard fractional derivatives on log-uniform grids"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer(
        "Expressions use t, x, v (v is the fractional derivative), + - * / ^, ln exp sqrt sin cos abs gamma,\n"
        "and the constants pi and e. The identifier A is replaced by the value of --alpha before parsing.");

    std::string kernel = "auto";
    app.add_option("--kernel", kernel, "Kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    std::string output;
    auto add_common = [&](CLI::App* sub, Interval& iv) {
        sub->add_option("--a", iv.a, "Interval start (> 0)")->capture_default_str();
        sub->add_option("--b", iv.b, "Interval end (> a)")->capture_default_str();
        sub->add_option("--output,-o", output, "Output file (default: standard output)");
    };

    DerivOptions dopt;
    std::string side = "left";
    std::string exact_text;
    auto* deriv = app.add_subcommand("deriv", "Sample a function and apply the discrete derivative");
    add_common(deriv, dopt.interval);
    deriv->add_option("--n", dopt.n, "Number of subintervals")->required();
    deriv->add_option("--alpha", dopt.alpha, "Fractional order in (0,1)")->required();
    deriv->add_option("--func", dopt.func, "x(t)")->required();
    auto* exact_opt = deriv->add_option("--exact", exact_text, "Exact derivative in t, adds exact and abs_err columns");
    deriv->add_option("--side", side, "left or right derivative")->check(CLI::IsMember({"left", "right"}));

    FdeOptions fopt;
    auto* fde = app.add_subcommand("fde", "Solve f(t, x, v) = 0 with x(a) = x0");
    add_common(fde, fopt.interval);
    fde->add_option("--n", fopt.n, "Number of subintervals")->required();
    fde->add_option("--alpha", fopt.alpha, "Fractional order in (0,1)")->required();
    fde->add_option("--residual", fopt.residual, "f(t, x, v)")->required();
    fde->add_option("--x0", fopt.x0, "Initial value x(a)")->required();

    VarminOptions vopt;
    auto* varmin = app.add_subcommand("varmin", "Minimise the integral of L(t, x, v) with fixed endpoints");
    add_common(varmin, vopt.interval);
    varmin->add_option("--n", vopt.n, "Number of subintervals (>= 2)")->required();
    varmin->add_option("--alpha", vopt.alpha, "Fractional order in (0,1)")->required();
    varmin->add_option("--lagrangian", vopt.lagrangian, "L(t, x, v)")->required();
    varmin->add_option("--xa", vopt.xa, "x(a)")->required();
    varmin->add_option("--xb", vopt.xb, "x(b)")->required();

    ConvergenceSpec cspec;
    Interval civ;
    std::string case_text, norm_text = "auto", plot_path;
    std::string cfunc, cresidual, clagrangian;
    auto* converge = app.add_subcommand("converge", "Error table over a grid of alpha and n");
    add_common(converge, civ);
    converge->add_option("--case", case_text, "deriv, fde or varmin")
        ->required()
        ->check(CLI::IsMember({"deriv", "fde", "varmin"}));
    converge->add_option("--alphas", cspec.alphas, "Comma-separated orders")->required()->delimiter(',');
    converge->add_option("--ns", cspec.ns, "Comma-separated mesh sizes")->required()->delimiter(',');
    converge->add_option("--func", cfunc, "deriv: x(t)");
    converge->add_option("--residual", cresidual, "fde: f(t, x, v)");
    converge->add_option("--lagrangian", clagrangian, "varmin: L(t, x, v)");
    converge->add_option("--exact", cspec.exact, "Exact derivative (deriv) or solution (fde, varmin) in t")->required();
    converge->add_option("--x0,--xa", cspec.x0, "Initial / left boundary value")->capture_default_str();
    converge->add_option("--xb", cspec.xb, "Right boundary value (varmin)")->capture_default_str();
    converge->add_option("--m1", cspec.bound_inputs.m1, "max |x'| for the bound column")->capture_default_str();
    converge->add_option("--m2", cspec.bound_inputs.m2, "max |x''| for the bound column")->capture_default_str();
    converge->add_option("--norm", norm_text, "auto, interior (k=1..n over n) or nodes (k=0..n over n+1)")
        ->check(CLI::IsMember({"auto", "interior", "nodes"}));
    converge->add_option("--plot", plot_path, "Write an SVG plot of log(error) against log(n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (kernel == "scalar")
            kernels::set_backend(kernels::Backend::scalar);
        else if (kernel == "avx2")
            kernels::set_backend(kernels::Backend::avx2);
        else
            kernels::reset_backend();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            err << "error: cannot open " << output << " for writing\n";
            return 1;
        }
        sink = &file;
    }

    // Buffer so a failed run never leaves a partial table behind.
    std::ostringstream buf;
    int code = 0;
    try {
        if (deriv->parsed()) {
            dopt.right = side == "right";
            if (!exact_opt->empty()) dopt.exact = exact_text;
            cmd_deriv(dopt, buf);
        } else if (fde->parsed()) {
            cmd_fde(fopt, buf);
        } else if (varmin->parsed()) {
            cmd_varmin(vopt, buf);
        } else if (converge->parsed()) {
            cspec.a = civ.a;
            cspec.b = civ.b;
            cspec.study = case_text == "deriv" ? StudyCase::deriv
                        : case_text == "fde"   ? StudyCase::fde
                                               : StudyCase::varmin;
            const std::string& text = cspec.study == StudyCase::deriv ? cfunc
                                    : cspec.study == StudyCase::fde   ? cresidual
                                                                      : clagrangian;
            if (text.empty()) {
                const char* flag = cspec.study == StudyCase::deriv ? "--func"
                                 : cspec.study == StudyCase::fde   ? "--residual"
                                                                   : "--lagrangian";
                throw UsageError(std::string("--case ") + case_text + " requires " + flag);
            }
            cspec.expression = text;
            cspec.norm = norm_text == "interior" ? ErrorNorm::interior
                       : norm_text == "nodes"    ? ErrorNorm::nodes
                                                 : ErrorNorm::automatic;
            std::ostringstream svg;
            const auto report = cmd_converge(cspec, buf, plot_path.empty() ? nullptr : &svg);
            if (!plot_path.empty()) {
                std::ofstream pf(plot_path);
                if (!pf) throw std::runtime_error("cannot open " + plot_path + " for writing");
                pf << svg.str();
            }
            for (const auto& row : report.rows)
                if (!row.error)
                    err << "error: " << case_name(row.study) << " alpha=" << row.alpha << " n=" << row.n << ": "
                        << row.failure << '\n';
            if (!report.all_succeeded()) code = 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    *sink << buf.str();
    sink->flush();
    return code;
}

}  // namespace hadfrac::cli
