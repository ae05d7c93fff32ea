#ifndef FRACVEL_EXPR_HPP
#define FRACVEL_EXPR_HPP

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "fracvel/errors.hpp"
#include "fracvel/format.hpp"
#include "fracvel/scalar.hpp"

namespace fracvel {

enum class ExprKind { Var, Const, Add, Sub, Mul, Div, Pow, Abs, Sin, Cos, Weierstrass };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable closed-form expression tree in one variable.
///
/// Sqrt and cbrt are sugar for Pow(1/2) and Pow(1/3) with identical
/// principal-branch semantics, so they never appear as distinct node kinds.
class Expr {
  public:
    explicit Expr(ExprKind k) : kind(k) {}

    ExprKind kind;
    Scalar value{};          // Const
    double exponent = 0.0;   // Pow
    double w_a = 0.0;        // Weierstrass amplitude ratio, 0 < a < 1
    double w_b = 0.0;        // Weierstrass frequency ratio, b > 1
    int w_terms = 0;         // Weierstrass term count, >= 1
    ExprPtr lhs, rhs;        // children; unary nodes use lhs only

    static ExprPtr var() {
        static const ExprPtr x = std::make_shared<Expr>(Expr{ExprKind::Var});
        return x;
    }

    static ExprPtr constant(Scalar v) {
        Expr e{ExprKind::Const};
        e.value = v;
        return std::make_shared<Expr>(std::move(e));
    }

    static ExprPtr add(ExprPtr a, ExprPtr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
    static ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
    static ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
    static ExprPtr div(ExprPtr a, ExprPtr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

    static ExprPtr pow(ExprPtr base, double exponent) {
        if (!std::isfinite(exponent)) throw ParameterError("pow node: non-finite exponent");
        Expr e{ExprKind::Pow};
        e.exponent = exponent;
        e.lhs = std::move(base);
        return std::make_shared<Expr>(std::move(e));
    }

    static ExprPtr abs(ExprPtr a) { return unary(ExprKind::Abs, std::move(a)); }
    static ExprPtr sin(ExprPtr a) { return unary(ExprKind::Sin, std::move(a)); }
    static ExprPtr cos(ExprPtr a) { return unary(ExprKind::Cos, std::move(a)); }

    static ExprPtr sqrt(ExprPtr a) { return pow(std::move(a), 0.5); }
    static ExprPtr cbrt(ExprPtr a) { return pow(std::move(a), 1.0 / 3.0); }

    static ExprPtr neg(ExprPtr a) { return mul(constant(Scalar{-1.0}), std::move(a)); }

    /// Truncated Weierstrass sum  W(x) = sum_{n=0}^{terms-1} a^n cos(b^n pi x).
    static ExprPtr weierstrass(double a, double b, int terms) {
        if (!(a > 0.0 && a < 1.0)) throw ParameterError("weierstrass: a must be in (0, 1)");
        if (!(b > 1.0)) throw ParameterError("weierstrass: b must be > 1");
        if (terms < 1) throw ParameterError("weierstrass: terms must be >= 1");
        Expr e{ExprKind::Weierstrass};
        e.w_a = a;
        e.w_b = b;
        e.w_terms = terms;
        return std::make_shared<Expr>(std::move(e));
    }

  private:
    static ExprPtr unary(ExprKind k, ExprPtr a) {
        Expr e{k};
        e.lhs = std::move(a);
        return std::make_shared<Expr>(std::move(e));
    }
    static ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
        Expr e{k};
        e.lhs = std::move(a);
        e.rhs = std::move(b);
        return std::make_shared<Expr>(std::move(e));
    }
};

constexpr int kDefaultWeierstrassTerms = 40;  // tail <= a^40, below double precision for a <= 0.7

namespace detail {

inline Scalar complex_sin(Scalar z) {
    const auto s = std::sin(std::complex<double>(z.re, z.im));
    return {s.real(), s.imag()};
}

inline Scalar complex_cos(Scalar z) {
    const auto c = std::cos(std::complex<double>(z.re, z.im));
    return {c.real(), c.imag()};
}

}  // namespace detail

std::string to_string(const ExprPtr& f);

/// Evaluates `f` at `x`. Real inputs through real-closed operations stay
/// exactly real; principal-branch powers may step into the complex plane.
inline Scalar eval(const ExprPtr& f, Scalar x) {
    switch (f->kind) {
        case ExprKind::Var:
            return x;
        case ExprKind::Const:
            return f->value;
        case ExprKind::Add:
            return eval(f->lhs, x) + eval(f->rhs, x);
        case ExprKind::Sub:
            return eval(f->lhs, x) - eval(f->rhs, x);
        case ExprKind::Mul:
            return eval(f->lhs, x) * eval(f->rhs, x);
        case ExprKind::Div: {
            const Scalar den = eval(f->rhs, x);
            if (abs(den) == 0.0) throw DomainError("division by zero in subexpression " + to_string(f->rhs));
            return eval(f->lhs, x) / den;
        }
        case ExprKind::Pow: {
            const Scalar base = eval(f->lhs, x);
            if (abs(base) == 0.0 && f->exponent < 0.0)
                throw DomainError("zero raised to negative exponent in subexpression " + to_string(f));
            return pow(base, f->exponent);
        }
        case ExprKind::Abs:
            return {abs(eval(f->lhs, x))};
        case ExprKind::Sin: {
            const Scalar v = eval(f->lhs, x);
            return v.is_real() ? Scalar{std::sin(v.re)} : detail::complex_sin(v);
        }
        case ExprKind::Cos: {
            const Scalar v = eval(f->lhs, x);
            return v.is_real() ? Scalar{std::cos(v.re)} : detail::complex_cos(v);
        }
        case ExprKind::Weierstrass: {
            Scalar total{0.0};
            double amp = 1.0;
            double freq = std::numbers::pi;
            for (int n = 0; n < f->w_terms; ++n) {
                const Scalar arg = Scalar{freq} * x;
                const Scalar c = arg.is_real() ? Scalar{std::cos(arg.re)} : detail::complex_cos(arg);
                total += Scalar{amp} * c;
                amp *= f->w_a;
                freq *= f->w_b;
            }
            return total;
        }
    }
    throw Error("eval: corrupt expression node");
}

/// Symbolic first derivative. Weierstrass nodes are rejected (nowhere
/// reliably C^1); the derivative of abs is u'/sign(u), valid off the kink.
inline ExprPtr derivative(const ExprPtr& f) {
    switch (f->kind) {
        case ExprKind::Var:
            return Expr::constant(Scalar{1.0});
        case ExprKind::Const:
            return Expr::constant(Scalar{0.0});
        case ExprKind::Add:
            return Expr::add(derivative(f->lhs), derivative(f->rhs));
        case ExprKind::Sub:
            return Expr::sub(derivative(f->lhs), derivative(f->rhs));
        case ExprKind::Mul:
            return Expr::add(Expr::mul(derivative(f->lhs), f->rhs), Expr::mul(f->lhs, derivative(f->rhs)));
        case ExprKind::Div:
            return Expr::div(
                Expr::sub(Expr::mul(derivative(f->lhs), f->rhs), Expr::mul(f->lhs, derivative(f->rhs))),
                Expr::mul(f->rhs, f->rhs));
        case ExprKind::Pow:
            return Expr::mul(Expr::mul(Expr::constant(Scalar{f->exponent}), Expr::pow(f->lhs, f->exponent - 1.0)),
                             derivative(f->lhs));
        case ExprKind::Abs:
            // d|u|/dx = u' * u / |u| away from u = 0.
            return Expr::mul(derivative(f->lhs), Expr::div(f->lhs, Expr::abs(f->lhs)));
        case ExprKind::Sin:
            return Expr::mul(Expr::cos(f->lhs), derivative(f->lhs));
        case ExprKind::Cos:
            return Expr::mul(Expr::neg(Expr::sin(f->lhs)), derivative(f->lhs));
        case ExprKind::Weierstrass:
            throw NotDifferentiableError("weierstrass node is not differentiable");
    }
    throw Error("derivative: corrupt expression node");
}

/// |x - center|^alpha with the given sign: Holder-continuous of sharp
/// exponent alpha at `center`, C^1 everywhere else.
inline ExprPtr make_cusp(double alpha, double center, int sign = +1) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("make_cusp: alpha must be in (0, 1]");
    if (sign != 1 && sign != -1) throw ParameterError("make_cusp: sign must be +1 or -1");
    ExprPtr body = Expr::pow(Expr::abs(Expr::sub(Expr::var(), Expr::constant(Scalar{center}))), alpha);
    return sign == 1 ? body : Expr::neg(body);
}

namespace detail {

inline int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub:
            return 1;
        case ExprKind::Mul:
        case ExprKind::Div:
            return 2;
        case ExprKind::Pow:
            return 3;
        default:
            return 4;
    }
}

std::string print_expr(const ExprPtr& f);

inline std::string print_child(const ExprPtr& child, int parent_prec, bool wrap_equal) {
    const int p = precedence(child->kind);
    const bool wrap = wrap_equal ? p <= parent_prec : p < parent_prec;
    return wrap ? "(" + print_expr(child) + ")" : print_expr(child);
}

inline std::string print_expr(const ExprPtr& f) {
    switch (f->kind) {
        case ExprKind::Var:
            return "x";
        case ExprKind::Const:
            if (!f->value.is_real()) return "complex(" + to_string(f->value) + ")";
            return format_double(f->value.re);
        case ExprKind::Add:
            return print_child(f->lhs, 1, false) + " + " + print_child(f->rhs, 1, true);
        case ExprKind::Sub:
            return print_child(f->lhs, 1, false) + " - " + print_child(f->rhs, 1, true);
        case ExprKind::Mul:
            return print_child(f->lhs, 2, false) + " * " + print_child(f->rhs, 2, true);
        case ExprKind::Div:
            return print_child(f->lhs, 2, false) + " / " + print_child(f->rhs, 2, true);
        case ExprKind::Pow: {
            const bool neg_const = f->lhs->kind == ExprKind::Const && f->lhs->value.re < 0.0;
            const std::string base =
                (precedence(f->lhs->kind) < 4 || neg_const) ? "(" + print_expr(f->lhs) + ")" : print_expr(f->lhs);
            return base + "^" + format_double(f->exponent);
        }
        case ExprKind::Abs:
            return "abs(" + print_expr(f->lhs) + ")";
        case ExprKind::Sin:
            return "sin(" + print_expr(f->lhs) + ")";
        case ExprKind::Cos:
            return "cos(" + print_expr(f->lhs) + ")";
        case ExprKind::Weierstrass:
            return "weierstrass(" + format_double(f->w_a) + ", " + format_double(f->w_b) + ", " +
                   std::to_string(f->w_terms) + ")";
    }
    return "?";
}

}  // namespace detail

/// Renders the tree in the expression mini-language; reparsing the result
/// yields a structurally identical tree.
inline std::string to_string(const ExprPtr& f) { return detail::print_expr(f); }

/// Structural equality (kinds, parameters and children all match).
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Var:
            return true;
        case ExprKind::Const:
            return a->value == b->value;
        case ExprKind::Pow:
            return a->exponent == b->exponent && equal(a->lhs, b->lhs);
        case ExprKind::Weierstrass:
            return a->w_a == b->w_a && a->w_b == b->w_b && a->w_terms == b->w_terms;
        case ExprKind::Abs:
        case ExprKind::Sin:
        case ExprKind::Cos:
            return equal(a->lhs, b->lhs);
        default:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

}  // namespace fracvel

#endif  // FRACVEL_EXPR_HPP
