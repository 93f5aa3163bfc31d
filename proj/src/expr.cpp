#include "hadfrac/expr.hpp"

#include "hadfrac/errors.hpp"
#include "hadfrac/numerics.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <system_error>

namespace hadfrac::expr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
NodePtr lit(double v) { return make({Literal{v}}); }

constexpr std::array<std::pair<std::string_view, Func>, 7> kFuncs{{
    {"ln", Func::ln},
    {"exp", Func::exp},
    {"sqrt", Func::sqrt},
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"abs", Func::abs},
    {"gamma", Func::gamma},
}};

std::optional<double> literal_value(const NodePtr& n)
{
    if (const auto* l = std::get_if<Literal>(&n->kind)) return l->value;
    return std::nullopt;
}

bool is_literal(const NodePtr& n, double v)
{
    const auto lv = literal_value(n);
    return lv && *lv == v;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all()
    {
        skip_ws();
        if (pos_ == src_.size()) throw SyntaxError("expected expression, found end of input", pos_);
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError("expected operator or end of input, found '" + std::string(1, src_[pos_]) + "'", pos_);
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            const std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
            throw SyntaxError("expected '" + std::string(1, c) + "', found " + found, pos_);
        }
    }

    NodePtr parse_expr()
    {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make({Binary{BinOp::add, lhs, parse_term()}});
            else if (accept('-'))
                lhs = make({Binary{BinOp::sub, lhs, parse_term()}});
            else
                return lhs;
        }
    }

    NodePtr parse_term()
    {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept('*'))
                lhs = make({Binary{BinOp::mul, lhs, parse_factor()}});
            else if (accept('/'))
                lhs = make({Binary{BinOp::div, lhs, parse_factor()}});
            else
                return lhs;
        }
    }

    NodePtr parse_factor()
    {
        if (accept('-')) return make({Neg{parse_factor()}});
        return parse_power();
    }

    NodePtr parse_power()
    {
        NodePtr base = parse_atom();
        if (accept('^')) return make({Binary{BinOp::pow, base, parse_factor()}});
        return base;
    }

    NodePtr parse_atom()
    {
        skip_ws();
        if (pos_ == src_.size()) throw SyntaxError("expected number, variable, function or '(', found end of input", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw SyntaxError("expected number, variable, function or '(', found '" + std::string(1, c) + "'", pos_);
    }

    NodePtr parse_number()
    {
        const char* first = src_.data() + pos_;
        const char* last = src_.data() + src_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec == std::errc::result_out_of_range) throw SyntaxError("numeric literal out of range", pos_);
        if (ec != std::errc()) throw SyntaxError("malformed numeric literal", pos_);
        pos_ += static_cast<std::size_t>(ptr - first);
        return lit(value);
    }

    NodePtr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        const std::string_view id = src_.substr(start, pos_ - start);

        if (id == "t") return make({VarRef{Var::t}});
        if (id == "x") return make({VarRef{Var::x}});
        if (id == "v") return make({VarRef{Var::v}});
        if (id == "pi") return lit(std::numbers::pi);
        if (id == "e") return lit(std::numbers::e);
        for (const auto& [name, fn] : kFuncs) {
            if (id == name) {
                expect('(');
                NodePtr arg = parse_expr();
                expect(')');
                return make({Call{fn, arg}});
            }
        }
        throw UnknownIdentifier(std::string(id), start);
    }
};

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void eval_fail(const std::string& what, const NodePtr& at)
{
    throw EvaluationError(what + " in '" + render(Expr(at)) + "'");
}

double eval_node(const NodePtr& n, const EvalPoint& p)
{
    const double r = std::visit(
        overloaded{
            [](const Literal& l) { return l.value; },
            [&](const VarRef& v) {
                switch (v.var) {
                case Var::t: return p.t;
                case Var::x: return p.x;
                case Var::v: return p.v;
                }
                return 0.0;
            },
            [&](const Neg& u) { return -eval_node(u.arg, p); },
            [&](const Binary& b) {
                const double l = eval_node(b.lhs, p);
                const double r = eval_node(b.rhs, p);
                switch (b.op) {
                case BinOp::add: return l + r;
                case BinOp::sub: return l - r;
                case BinOp::mul: return l * r;
                case BinOp::div:
                    if (r == 0.0) eval_fail("division by zero", n);
                    return l / r;
                case BinOp::pow:
                    if (l == 0.0 && r < 0.0) eval_fail("zero raised to a negative power", n);
                    if (l < 0.0 && r != std::trunc(r)) eval_fail("negative base with non-integer exponent", n);
                    return std::pow(l, r);
                }
                return 0.0;
            },
            [&](const Call& c) {
                const double a = eval_node(c.arg, p);
                switch (c.fn) {
                case Func::ln:
                    if (!(a > 0.0)) eval_fail("ln of non-positive value", n);
                    return std::log(a);
                case Func::exp: return std::exp(a);
                case Func::sqrt:
                    if (a < 0.0) eval_fail("sqrt of negative value", n);
                    return std::sqrt(a);
                case Func::sin: return std::sin(a);
                case Func::cos: return std::cos(a);
                case Func::abs: return std::abs(a);
                case Func::gamma:
                    if (!(a > 0.0)) eval_fail("gamma of non-positive value", n);
                    return numerics::gamma(a);
                }
                return 0.0;
            },
        },
        n->kind);
    if (!std::isfinite(r)) eval_fail("non-finite result", n);
    return r;
}

// ---------------------------------------------------------------------------
// Simplifying constructors: fold literals and drop identities so that
// derivatives of constant subtrees never reach evaluation.

NodePtr add(NodePtr a, NodePtr b)
{
    if (is_literal(a, 0.0)) return b;
    if (is_literal(b, 0.0)) return a;
    if (auto x = literal_value(a), y = literal_value(b); x && y) return lit(*x + *y);
    return make({Binary{BinOp::add, std::move(a), std::move(b)}});
}

NodePtr neg(NodePtr a)
{
    if (auto x = literal_value(a)) return lit(-*x);
    if (const auto* u = std::get_if<Neg>(&a->kind)) return u->arg;
    return make({Neg{std::move(a)}});
}

NodePtr sub(NodePtr a, NodePtr b)
{
    if (is_literal(b, 0.0)) return a;
    if (is_literal(a, 0.0)) return neg(std::move(b));
    if (auto x = literal_value(a), y = literal_value(b); x && y) return lit(*x - *y);
    return make({Binary{BinOp::sub, std::move(a), std::move(b)}});
}

NodePtr mul(NodePtr a, NodePtr b)
{
    if (is_literal(a, 0.0) || is_literal(b, 0.0)) return lit(0.0);
    if (is_literal(a, 1.0)) return b;
    if (is_literal(b, 1.0)) return a;
    if (auto x = literal_value(a), y = literal_value(b); x && y) return lit(*x * *y);
    return make({Binary{BinOp::mul, std::move(a), std::move(b)}});
}

NodePtr div(NodePtr a, NodePtr b)
{
    if (is_literal(a, 0.0) && !is_literal(b, 0.0)) return lit(0.0);
    if (is_literal(b, 1.0)) return a;
    if (auto x = literal_value(a), y = literal_value(b); x && y && *y != 0.0) return lit(*x / *y);
    return make({Binary{BinOp::div, std::move(a), std::move(b)}});
}

NodePtr pow(NodePtr a, NodePtr b)
{
    if (is_literal(b, 1.0)) return a;
    if (is_literal(b, 0.0)) return lit(1.0);
    return make({Binary{BinOp::pow, std::move(a), std::move(b)}});
}

NodePtr call(Func f, NodePtr a) { return make({Call{f, std::move(a)}}); }

bool node_depends(const NodePtr& n, Var var)
{
    return std::visit(overloaded{
                          [](const Literal&) { return false; },
                          [&](const VarRef& v) { return v.var == var; },
                          [&](const Neg& u) { return node_depends(u.arg, var); },
                          [&](const Binary& b) { return node_depends(b.lhs, var) || node_depends(b.rhs, var); },
                          [&](const Call& c) { return node_depends(c.arg, var); },
                      },
                      n->kind);
}

NodePtr diff_node(const NodePtr& n, Var wrt)
{
    if (!node_depends(n, wrt)) return lit(0.0);
    return std::visit(
        overloaded{
            [](const Literal&) { return lit(0.0); },
            [&](const VarRef& v) { return lit(v.var == wrt ? 1.0 : 0.0); },
            [&](const Neg& u) { return neg(diff_node(u.arg, wrt)); },
            [&](const Binary& b) -> NodePtr {
                const NodePtr& f = b.lhs;
                const NodePtr& g = b.rhs;
                switch (b.op) {
                case BinOp::add: return add(diff_node(f, wrt), diff_node(g, wrt));
                case BinOp::sub: return sub(diff_node(f, wrt), diff_node(g, wrt));
                case BinOp::mul: return add(mul(diff_node(f, wrt), g), mul(f, diff_node(g, wrt)));
                case BinOp::div:
                    return div(sub(mul(diff_node(f, wrt), g), mul(f, diff_node(g, wrt))), mul(g, g));
                case BinOp::pow:
                    if (!node_depends(g, wrt)) {
                        // d(f^c) = c f^(c-1) df
                        return mul(mul(g, pow(f, sub(g, lit(1.0)))), diff_node(f, wrt));
                    }
                    // d(f^g) = f^g (g' ln f + g f'/f)
                    return mul(n, add(mul(diff_node(g, wrt), call(Func::ln, f)), div(mul(g, diff_node(f, wrt)), f)));
                }
                return lit(0.0);
            },
            [&](const Call& c) -> NodePtr {
                const NodePtr& u = c.arg;
                const NodePtr du = diff_node(u, wrt);
                switch (c.fn) {
                case Func::ln: return div(du, u);
                case Func::exp: return mul(n, du);
                case Func::sqrt: return div(du, mul(lit(2.0), n));
                case Func::sin: return mul(call(Func::cos, u), du);
                case Func::cos: return neg(mul(call(Func::sin, u), du));
                case Func::abs:
                    throw UnsupportedDerivative("abs is not differentiable: '" + render(Expr(n)) + "'");
                case Func::gamma:
                    throw UnsupportedDerivative("gamma may only be applied to constants when differentiating: '" +
                                                render(Expr(n)) + "'");
                }
                return lit(0.0);
            },
        },
        n->kind);
}

std::string render_node(const NodePtr& n)
{
    return std::visit(overloaded{
                          [](const Literal& l) {
                              const std::string s = format_double(l.value);
                              return l.value < 0.0 || std::signbit(l.value) ? "(" + s + ")" : s;
                          },
                          [](const VarRef& v) { return std::string(var_name(v.var)); },
                          [](const Neg& u) { return "(-" + render_node(u.arg) + ")"; },
                          [](const Binary& b) {
                              static constexpr std::array<const char*, 5> ops{" + ", " - ", " * ", " / ", "^"};
                              return "(" + render_node(b.lhs) + ops[static_cast<std::size_t>(b.op)] +
                                     render_node(b.rhs) + ")";
                          },
                          [](const Call& c) {
                              return std::string(func_name(c.fn)) + "(" + render_node(c.arg) + ")";
                          },
                      },
                      n->kind);
}

}  // namespace

Expr::Expr(NodePtr root) : root_(std::move(root))
{
    if (!root_) throw DomainError("Expr: null root");
}

Expr Expr::literal(double value) { return Expr(lit(value)); }
Expr Expr::variable(Var var) { return Expr(make({VarRef{var}})); }

Expr parse(std::string_view src) { return Expr(Parser(src).parse_all()); }

double eval(const Expr& e, const EvalPoint& p) { return eval_node(e.ptr(), p); }

Expr diff(const Expr& e, Var wrt) { return Expr(diff_node(e.ptr(), wrt)); }

bool depends_on(const Expr& e, Var var) { return node_depends(e.ptr(), var); }

std::string render(const Expr& e) { return render_node(e.ptr()); }

std::string_view var_name(Var v) noexcept
{
    switch (v) {
    case Var::t: return "t";
    case Var::x: return "x";
    case Var::v: return "v";
    }
    return "?";
}

std::string_view func_name(Func f) noexcept
{
    for (const auto& [name, fn] : kFuncs)
        if (fn == f) return name;
    return "?";
}

std::string substitute_placeholder(std::string_view src, std::string_view name, double value)
{
    const auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    const std::string replacement = "(" + format_double(value) + ")";
    std::string out;
    out.reserve(src.size());
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && ident(src[j])) ++j;
            const std::string_view word = src.substr(i, j - i);
            out += word == name ? replacement : std::string(word);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            // Copy numeric literals whole so the 'e' of an exponent is never mistaken for an identifier.
            double ignored = 0.0;
            const auto [ptr, ec] = std::from_chars(src.data() + i, src.data() + src.size(), ignored);
            const std::size_t len = ec == std::errc() || ec == std::errc::result_out_of_range
                                        ? static_cast<std::size_t>(ptr - (src.data() + i))
                                        : 1;
            out += src.substr(i, len);
            i += len;
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

}  // namespace hadfrac::expr
