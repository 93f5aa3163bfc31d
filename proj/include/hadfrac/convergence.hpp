#pragma once

#include "hadfrac/hadamard.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hadfrac {

enum class StudyCase { deriv, fde, varmin };

/// Which error normalisation a study reports.
/// `interior`: (1/n) sum_{k=1..n}; `nodes`: (1/(n+1)) sum_{k=0..n};
/// `automatic`: interior for derivative studies, nodes for the two solvers.
enum class ErrorNorm { automatic, interior, nodes };

std::string_view case_name(StudyCase c) noexcept;

struct ConvergenceRow {
    StudyCase study = StudyCase::deriv;
    double alpha = 0.0;
    int n = 0;
    std::optional<double> error;  ///< empty when the cell failed
    double bound = 0.0;
    std::string failure;          ///< reason when error is empty
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  ///< sorted by (case, alpha, n)

    bool all_succeeded() const noexcept;
};

struct ConvergenceSpec {
    StudyCase study = StudyCase::fde;
    double a = 1.0, b = 2.0;
    std::vector<double> alphas;
    std::vector<int> ns;
    /// deriv: the function x(t); fde: the residual f(t,x,v); varmin: the Lagrangian.
    /// The identifier A is replaced by each alpha before parsing.
    std::string expression;
    /// deriv: the exact derivative; fde/varmin: the exact solution. In t (and A).
    std::string exact;
    double x0 = 0.0;  ///< fde initial value, varmin left boundary value
    double xb = 0.0;  ///< varmin right boundary value
    ErrorBoundInputs bound_inputs{1.0, 1.0};
    ErrorNorm norm = ErrorNorm::automatic;
};

/// Runs every (alpha, n) cell. A failing cell is recorded, not thrown.
/// Throws SyntaxError / DomainError for malformed input before any cell runs.
ConvergenceReport run_convergence(const ConvergenceSpec& spec);

/// Header `case,alpha,n,error,bound`; failed cells print FAIL in the error column.
void write_csv(const ConvergenceReport& report, std::ostream& os);

/// Self-contained SVG: log10(error) against log10(n), one polyline per (case, alpha).
void write_svg(const ConvergenceReport& report, std::ostream& os);

/// 17 significant digits, dot decimal separator regardless of locale.
std::string format_csv_double(double value);

}  // namespace hadfrac
