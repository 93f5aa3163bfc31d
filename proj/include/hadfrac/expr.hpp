#pragma once

// A small expression language over three variables: t (time), x (state) and
// v (the fractional-derivative slot). Used for residuals f(t, x, v) and
// Lagrangians L(t, x, v) supplied on the command line.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?            right-associative
//   atom   := number | 'pi' | 'e' | var | call | '(' expr ')'
//   call   := ('ln'|'exp'|'sqrt'|'sin'|'cos'|'abs'|'gamma') '(' expr ')'

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace hadfrac::expr {

enum class Var { t, x, v };
enum class BinOp { add, sub, mul, div, pow };
enum class Func { ln, exp, sqrt, sin, cos, abs, gamma };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal {
    double value;
};
struct VarRef {
    Var var;
};
struct Neg {
    NodePtr arg;
};
struct Binary {
    BinOp op;
    NodePtr lhs, rhs;
};
struct Call {
    Func fn;
    NodePtr arg;
};

struct Node {
    std::variant<Literal, VarRef, Neg, Binary, Call> kind;
};

/// Immutable expression tree. Copies share structure.
class Expr {
public:
    explicit Expr(NodePtr root);

    static Expr literal(double value);
    static Expr variable(Var var);

    const Node& root() const noexcept { return *root_; }
    const NodePtr& ptr() const noexcept { return root_; }

private:
    NodePtr root_;
};

struct EvalPoint {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
};

/// Throws SyntaxError (with byte offset) or UnknownIdentifier.
Expr parse(std::string_view src);

/// Throws EvaluationError on ln/sqrt of a negative, ln(0), division by zero,
/// 0^negative, gamma of a non-positive, or any other non-finite result.
double eval(const Expr& e, const EvalPoint& p);

/// Symbolic partial derivative. Subtrees independent of `wrt` differentiate
/// to zero without being visited, so `abs` and `gamma` are accepted there;
/// differentiating through them throws UnsupportedDerivative.
Expr diff(const Expr& e, Var wrt);

bool depends_on(const Expr& e, Var var);

/// Canonical text form; parse(render(e)) evaluates identically to e.
std::string render(const Expr& e);

std::string_view var_name(Var v) noexcept;
std::string_view func_name(Func f) noexcept;

/// Replaces every standalone identifier `name` in `src` by the parenthesised
/// decimal value, e.g. A -> (0.5). Used for the fractional-order placeholder.
std::string substitute_placeholder(std::string_view src, std::string_view name, double value);

/// Shortest decimal text that round-trips to the same double; locale independent.
std::string format_double(double value);

}  // namespace hadfrac::expr
