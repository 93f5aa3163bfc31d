#pragma once

// Command-line front end. Every command writes CSV with a fixed header and
// 17 significant digits. Expressions may use the placeholder A, replaced by
// the fractional order before parsing.
//
// Exit codes: 0 success, 1 numeric or solver failure, 2 usage error.

#include "hadfrac/convergence.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace hadfrac::cli {

/// Invalid flags or flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double a = 1.0;
    double b = 2.0;
};

struct DerivOptions {
    Interval interval;
    int n = 10;
    double alpha = 0.5;
    std::string func;
    std::optional<std::string> exact;
    bool right = false;
};

struct FdeOptions {
    Interval interval;
    int n = 10;
    double alpha = 0.5;
    std::string residual;
    double x0 = 0.0;
};

struct VarminOptions {
    Interval interval;
    int n = 10;
    double alpha = 0.5;
    std::string lagrangian;
    double xa = 0.0;
    double xb = 0.0;
};

/// Columns N,t,approx[,exact,abs_err]; left side N = 1..n, right side N = 0..n-1.
void cmd_deriv(const DerivOptions& opt, std::ostream& out);

/// Columns N,t,x.
void cmd_fde(const FdeOptions& opt, std::ostream& out);

/// Columns N,t,x.
void cmd_varmin(const VarminOptions& opt, std::ostream& out);

/// Writes the report CSV and, when `plot` is non-null, the SVG. Returns the report.
ConvergenceReport cmd_converge(const ConvergenceSpec& spec, std::ostream& out, std::ostream* plot);

/// Full command line, including argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hadfrac::cli
