#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpk/errors.hpp"
#include "mpk/polynomial.hpp"
#include "mpk/rational.hpp"

namespace mpk {

enum class ExprKind { Constant, Variable, Add, Mul, Neg, Pow, Exp, Sin, Cos, Sqrt, Reciprocal };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression node. Add and Mul are binary; a - b is stored as
// add(a, neg(b)) and a / b as mul(a, reciprocal(b)), which keeps the renderer
// and parser in exact structural agreement.
class Expr {
public:
    ExprKind kind;
    std::variant<std::monostate, Rational, double> value;  // Constant payload
    std::string var_name;                                  // Variable payload
    ExprPtr a, b;                                          // children
    int exponent = 0;                                      // Pow payload

    explicit Expr(ExprKind k) : kind(k) {}
};

inline ExprPtr expr_constant(const Rational& r) {
    auto e = std::make_shared<Expr>(ExprKind::Constant);
    e->value = r;
    return e;
}
inline ExprPtr expr_real(double d) {
    auto e = std::make_shared<Expr>(ExprKind::Constant);
    e->value = d;
    return e;
}
inline ExprPtr expr_variable(std::string name) {
    auto e = std::make_shared<Expr>(ExprKind::Variable);
    e->var_name = std::move(name);
    return e;
}
inline ExprPtr expr_unary(ExprKind k, ExprPtr child) {
    auto e = std::make_shared<Expr>(k);
    e->a = std::move(child);
    return e;
}
inline ExprPtr expr_binary(ExprKind k, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>(k);
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}
inline ExprPtr expr_add(ExprPtr a, ExprPtr b) { return expr_binary(ExprKind::Add, std::move(a), std::move(b)); }
inline ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return expr_binary(ExprKind::Mul, std::move(a), std::move(b)); }
inline ExprPtr expr_neg(ExprPtr a) { return expr_unary(ExprKind::Neg, std::move(a)); }
inline ExprPtr expr_exp(ExprPtr a) { return expr_unary(ExprKind::Exp, std::move(a)); }
inline ExprPtr expr_sin(ExprPtr a) { return expr_unary(ExprKind::Sin, std::move(a)); }
inline ExprPtr expr_cos(ExprPtr a) { return expr_unary(ExprKind::Cos, std::move(a)); }
inline ExprPtr expr_sqrt(ExprPtr a) { return expr_unary(ExprKind::Sqrt, std::move(a)); }
inline ExprPtr expr_reciprocal(ExprPtr a) { return expr_unary(ExprKind::Reciprocal, std::move(a)); }
inline ExprPtr expr_pow(ExprPtr base, int k) {
    auto e = std::make_shared<Expr>(ExprKind::Pow);
    e->a = std::move(base);
    e->exponent = k;
    return e;
}

inline bool is_rational_constant(const ExprPtr& e) {
    return e->kind == ExprKind::Constant && std::holds_alternative<Rational>(e->value);
}

inline bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case ExprKind::Constant:
            return x->value == y->value;
        case ExprKind::Variable:
            return x->var_name == y->var_name;
        case ExprKind::Pow:
            return x->exponent == y->exponent && structurally_equal(x->a, y->a);
        case ExprKind::Add:
        case ExprKind::Mul:
            return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
        default:
            return structurally_equal(x->a, y->a);
    }
}

namespace detail {

// --- lexer ----------------------------------------------------------------

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::size_t offset = 0;  // 1-based byte offset of the first character
    Rational number;         // Number payload (decimals scaled to exact rationals)
    bool number_is_integer = false;
    std::string text;        // Ident payload / diagnostics
};

inline BigInt pow10_big(std::size_t k) {
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= 10;
    return r;
}

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    auto isdig = [](char c) { return c >= '0' && c <= '9'; };
    while (i < n) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        Token t;
        t.offset = i + 1;
        if (isdig(c)) {
            std::size_t j = i;
            while (j < n && isdig(src[j])) ++j;
            std::string int_digits = src.substr(i, j - i);
            std::string frac_digits;
            if (j < n && src[j] == '.') {
                std::size_t k = j + 1;
                if (k >= n || !isdig(src[k]))
                    throw ParseError("malformed number: digits required after decimal point", t.offset,
                                     "digit");
                while (k < n && isdig(src[k])) ++k;
                frac_digits = src.substr(j + 1, k - j - 1);
                j = k;
            }
            long exp10 = 0;
            if (j < n && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                std::size_t sgn = 0;
                if (k < n && (src[k] == '+' || src[k] == '-')) {
                    sgn = src[k] == '-' ? 2 : 1;
                    ++k;
                }
                if (k < n && isdig(src[k])) {
                    std::size_t m = k;
                    while (m < n && isdig(src[m])) ++m;
                    const std::string digits = src.substr(k, m - k);
                    if (digits.size() > 4) throw ParseError("exponent out of range", t.offset, "smaller exponent");
                    exp10 = std::stol(digits) * (sgn == 2 ? -1 : 1);
                    j = m;
                }
                // otherwise the 'e' starts an identifier; leave it unconsumed
            }
            BigInt mant(int_digits + frac_digits);
            BigInt den = pow10_big(frac_digits.size());
            Rational value(mant, den);
            if (exp10 > 0)
                value *= Rational(pow10_big(static_cast<std::size_t>(exp10)));
            else if (exp10 < 0)
                value /= Rational(pow10_big(static_cast<std::size_t>(-exp10)));
            t.kind = TokKind::Number;
            t.number = value;
            t.number_is_integer = frac_digits.empty() && exp10 == 0;
            t.text = src.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = TokKind::Ident;
            t.text = src.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = TokKind::Plus; break;
                case '-': t.kind = TokKind::Minus; break;
                case '*': t.kind = TokKind::Star; break;
                case '/': t.kind = TokKind::Slash; break;
                case '^': t.kind = TokKind::Caret; break;
                case '(': t.kind = TokKind::LParen; break;
                case ')': t.kind = TokKind::RParen; break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", t.offset,
                                     "number, identifier, or operator");
            }
            t.text = std::string(1, c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = TokKind::End;
    end.offset = n + 1;
    end.text = "end of input";
    out.push_back(std::move(end));
    return out;
}

// --- parser ---------------------------------------------------------------

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<std::string> vars)
        : toks_(std::move(toks)), vars_(std::move(vars)) {}

    ExprPtr run() {
        ExprPtr e = parse_sum();
        if (peek().kind != TokKind::End)
            throw ParseError("unexpected '" + peek().text + "' after complete expression", peek().offset,
                             "operator or end of input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool match(TokKind k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    static ExprPtr fold_neg(ExprPtr e) {
        if (e->kind == ExprKind::Constant) {
            if (const Rational* r = std::get_if<Rational>(&e->value)) return expr_constant(-*r);
            if (const double* d = std::get_if<double>(&e->value)) return expr_real(-*d);
        }
        return expr_neg(std::move(e));
    }

    static ExprPtr fold_mul(ExprPtr lhs, ExprPtr rhs) {
        if (is_rational_constant(lhs) && std::get<Rational>(lhs->value).is_one() &&
            rhs->kind == ExprKind::Reciprocal)
            return rhs;
        return expr_mul(std::move(lhs), std::move(rhs));
    }

    static ExprPtr fold_div(ExprPtr lhs, ExprPtr rhs) {
        if (is_rational_constant(lhs) && is_rational_constant(rhs) &&
            !std::get<Rational>(rhs->value).is_zero())
            return expr_constant(std::get<Rational>(lhs->value) / std::get<Rational>(rhs->value));
        return fold_mul(std::move(lhs), expr_reciprocal(std::move(rhs)));
    }

    ExprPtr parse_sum() {
        ExprPtr acc = parse_product();
        while (true) {
            if (match(TokKind::Plus))
                acc = expr_add(std::move(acc), parse_product());
            else if (match(TokKind::Minus))
                acc = expr_add(std::move(acc), fold_neg(parse_product()));
            else
                return acc;
        }
    }

    ExprPtr parse_product() {
        ExprPtr acc = parse_unary();
        while (true) {
            if (match(TokKind::Star))
                acc = fold_mul(std::move(acc), parse_unary());
            else if (match(TokKind::Slash))
                acc = fold_div(std::move(acc), parse_unary());
            else
                return acc;
        }
    }

    ExprPtr parse_unary() {
        if (match(TokKind::Minus)) return fold_neg(parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (!match(TokKind::Caret)) return base;
        bool neg = match(TokKind::Minus);
        const Token& t = peek();
        if (t.kind != TokKind::Number || !t.number_is_integer)
            throw ParseError("exponent must be an integer literal", t.offset, "integer");
        if (t.number.numerator() > 9999)
            throw ParseError("exponent out of range", t.offset, "integer of magnitude at most 9999");
        advance();
        const int k = static_cast<int>(t.number.numerator().convert_to<long>());
        return expr_pow(std::move(base), neg ? -k : k);
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Number:
                advance();
                return expr_constant(t.number);
            case TokKind::LParen: {
                advance();
                ExprPtr e = parse_sum();
                if (!match(TokKind::RParen))
                    throw ParseError("unterminated parenthesis: found '" + peek().text + "'", peek().offset,
                                     "')'");
                return e;
            }
            case TokKind::Ident: {
                advance();
                const std::string& name = t.text;
                if (name == "exp" || name == "sin" || name == "cos" || name == "sqrt") {
                    if (!match(TokKind::LParen))
                        throw ParseError("function '" + name + "' requires parenthesized argument",
                                         peek().offset, "'('");
                    ExprPtr arg = parse_sum();
                    if (!match(TokKind::RParen))
                        throw ParseError("unterminated call to '" + name + "': found '" + peek().text + "'",
                                         peek().offset, "')'");
                    if (name == "exp") return expr_exp(std::move(arg));
                    if (name == "sin") return expr_sin(std::move(arg));
                    if (name == "cos") return expr_cos(std::move(arg));
                    return expr_sqrt(std::move(arg));
                }
                for (const std::string& v : vars_)
                    if (v == name) return expr_variable(name);
                throw UnknownIdentifierError(name, t.offset);
            }
            default:
                throw ParseError("unexpected '" + t.text + "'", t.offset, "number, identifier, or '('");
        }
    }

    std::vector<Token> toks_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parse an expression over the declared variables. Multiplication is always
// explicit ("3*t", never "3t"); decimal literals become exact rationals.
inline ExprPtr parse(const std::string& text, const std::vector<std::string>& vars) {
    return detail::Parser(detail::lex(text), vars).run();
}

// --- renderer ---------------------------------------------------------------

namespace detail {

std::string render_node(const ExprPtr& e);  // forward

inline std::string render_rational(const Rational& r) {
    // Non-integer constants are self-parenthesized so they survive any
    // multiplicative context ("x * (1/3)" rather than the ambiguous "x * 1/3").
    if (r.is_integer()) return r.to_string();
    return "(" + r.to_string() + ")";
}

inline std::string render_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

inline bool parens_as_neg_child(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Mul:
        case ExprKind::Neg:
        case ExprKind::Reciprocal:
            return true;
        default:
            return false;
    }
}

inline bool parens_as_mul_right(const ExprPtr& e) {
    return e->kind == ExprKind::Add || e->kind == ExprKind::Mul;
}

inline bool parens_as_pow_base(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Variable:
        case ExprKind::Exp:
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Sqrt:
            return false;
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value))
                return r->is_integer() && r->sign() < 0;  // non-integers already self-parenthesize
            return true;
        default:
            return true;
    }
}

inline std::string wrap(const ExprPtr& e) { return "(" + render_node(e) + ")"; }

inline std::string render_node(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value)) return render_rational(*r);
            return render_double(std::get<double>(e->value));
        case ExprKind::Variable:
            return e->var_name;
        case ExprKind::Add: {
            std::string lhs = render_node(e->a);
            const ExprPtr& rhs = e->b;
            if (rhs->kind == ExprKind::Neg) {
                const ExprPtr& inner = rhs->a;
                return lhs + " - " + (inner->kind == ExprKind::Add ? wrap(inner) : render_node(inner));
            }
            if (is_rational_constant(rhs) && std::get<Rational>(rhs->value).sign() < 0)
                return lhs + " - " + render_rational(-std::get<Rational>(rhs->value));
            return lhs + " + " + (rhs->kind == ExprKind::Add ? wrap(rhs) : render_node(rhs));
        }
        case ExprKind::Mul: {
            std::string lhs = e->a->kind == ExprKind::Add ? wrap(e->a) : render_node(e->a);
            const ExprPtr& rhs = e->b;
            if (rhs->kind == ExprKind::Reciprocal) {
                const ExprPtr& den = rhs->a;
                const bool wrap_den = den->kind == ExprKind::Add || den->kind == ExprKind::Mul ||
                                      den->kind == ExprKind::Reciprocal;
                return lhs + " / " + (wrap_den ? wrap(den) : render_node(den));
            }
            return lhs + " * " + (parens_as_mul_right(rhs) ? wrap(rhs) : render_node(rhs));
        }
        case ExprKind::Neg:
            return "-" + (parens_as_neg_child(e->a) ? wrap(e->a) : render_node(e->a));
        case ExprKind::Pow: {
            const std::string base = parens_as_pow_base(e->a) ? wrap(e->a) : render_node(e->a);
            return base + "^" + std::to_string(e->exponent);
        }
        case ExprKind::Exp:
            return "exp(" + render_node(e->a) + ")";
        case ExprKind::Sin:
            return "sin(" + render_node(e->a) + ")";
        case ExprKind::Cos:
            return "cos(" + render_node(e->a) + ")";
        case ExprKind::Sqrt:
            return "sqrt(" + render_node(e->a) + ")";
        case ExprKind::Reciprocal: {
            const ExprPtr& den = e->a;
            const bool wrap_den = den->kind == ExprKind::Add || den->kind == ExprKind::Mul ||
                                  den->kind == ExprKind::Reciprocal;
            return "1/" + (wrap_den ? wrap(den) : render_node(den));
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace detail

// Text form that parses back to a structurally identical tree (for trees the
// parser itself can produce).
inline std::string render(const ExprPtr& e) { return detail::render_node(e); }

// --- evaluation and lowering -------------------------------------------------

inline double eval_real(const ExprPtr& e, const std::map<std::string, double>& bindings) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value)) return r->to_double();
            return std::get<double>(e->value);
        case ExprKind::Variable: {
            auto it = bindings.find(e->var_name);
            if (it == bindings.end()) throw UnboundVariableError(e->var_name);
            return it->second;
        }
        case ExprKind::Add:
            return eval_real(e->a, bindings) + eval_real(e->b, bindings);
        case ExprKind::Mul:
            return eval_real(e->a, bindings) * eval_real(e->b, bindings);
        case ExprKind::Neg:
            return -eval_real(e->a, bindings);
        case ExprKind::Pow:
            return std::pow(eval_real(e->a, bindings), static_cast<double>(e->exponent));
        case ExprKind::Exp:
            return std::exp(eval_real(e->a, bindings));
        case ExprKind::Sin:
            return std::sin(eval_real(e->a, bindings));
        case ExprKind::Cos:
            return std::cos(eval_real(e->a, bindings));
        case ExprKind::Sqrt:
            return std::sqrt(eval_real(e->a, bindings));
        case ExprKind::Reciprocal:
            return 1.0 / eval_real(e->a, bindings);
    }
    throw Error("unreachable expression kind");
}

// Single-variable fast path (quadrature calls this millions of times).
inline double eval_real(const ExprPtr& e, const std::string& var, double x) {
    switch (e->kind) {
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value)) return r->to_double();
            return std::get<double>(e->value);
        case ExprKind::Variable:
            if (e->var_name != var) throw UnboundVariableError(e->var_name);
            return x;
        case ExprKind::Add:
            return eval_real(e->a, var, x) + eval_real(e->b, var, x);
        case ExprKind::Mul:
            return eval_real(e->a, var, x) * eval_real(e->b, var, x);
        case ExprKind::Neg:
            return -eval_real(e->a, var, x);
        case ExprKind::Pow:
            return std::pow(eval_real(e->a, var, x), static_cast<double>(e->exponent));
        case ExprKind::Exp:
            return std::exp(eval_real(e->a, var, x));
        case ExprKind::Sin:
            return std::sin(eval_real(e->a, var, x));
        case ExprKind::Cos:
            return std::cos(eval_real(e->a, var, x));
        case ExprKind::Sqrt:
            return std::sqrt(eval_real(e->a, var, x));
        case ExprKind::Reciprocal:
            return 1.0 / eval_real(e->a, var, x);
    }
    throw Error("unreachable expression kind");
}

// Lower an expression to an exact element of Q[x, y]. Only +, -, *, integer
// powers, rational constants, the variables x and y, and division by nonzero
// constants are allowed; anything else names the offending subterm.
inline Polynomial to_polynomial(const ExprPtr& e) {
    auto nonpoly = [&e](const char* why) {
        return UnsupportedExpressionError(std::string("not a polynomial: ") + why, render(e));
    };
    switch (e->kind) {
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value)) return Polynomial(*r);
            throw nonpoly("real literal is not an exact rational");
        case ExprKind::Variable:
            if (e->var_name == "x") return Polynomial::x();
            if (e->var_name == "y") return Polynomial::y();
            throw nonpoly("only the variables x and y are polynomial inputs");
        case ExprKind::Add:
            return to_polynomial(e->a) + to_polynomial(e->b);
        case ExprKind::Mul:
            return to_polynomial(e->a) * to_polynomial(e->b);
        case ExprKind::Neg:
            return -to_polynomial(e->a);
        case ExprKind::Pow: {
            Polynomial base = to_polynomial(e->a);
            if (e->exponent >= 0) return base.pow(static_cast<unsigned>(e->exponent));
            if (!base.is_constant()) throw nonpoly("negative power of a non-constant");
            const Rational c = base.is_zero() ? Rational() : base.leading().second;
            if (c.is_zero()) throw DivisionByZeroError("zero raised to a negative power");
            Rational v(1);
            for (int i = 0; i < -e->exponent; ++i) v *= c;
            return Polynomial(v.reciprocal());
        }
        case ExprKind::Reciprocal: {
            Polynomial den = to_polynomial(e->a);
            if (!den.is_constant()) throw nonpoly("division by a non-constant");
            if (den.is_zero()) throw DivisionByZeroError("division by constant zero");
            return Polynomial(den.leading().second.reciprocal());
        }
        default:
            throw nonpoly("transcendental functions are not polynomial");
    }
}

}  // namespace mpk
