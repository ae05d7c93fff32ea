#ifndef FRACVEL_SCALAR_HPP
#define FRACVEL_SCALAR_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "fracvel/errors.hpp"

namespace fracvel {

/// Complex-capable scalar with an exact real fast path.
///
/// Closed operations on real operands (+, -, *, /, integer powers) never
/// leave the real line: the imaginary part stays bit-exactly zero, so
/// algebraic identity checks at finite window sizes can assert near machine
/// precision. Non-integer powers of negative reals take the principal
/// branch with Arg in (-pi, pi].
struct Scalar {
    double re = 0.0;
    double im = 0.0;

    constexpr Scalar() = default;
    constexpr Scalar(double r) : re(canon(r)) {}  // NOLINT: implicit by design
    constexpr Scalar(double r, double i) : re(canon(r)), im(canon(i)) {}

    bool is_real() const noexcept { return im == 0.0; }

  private:
    // -0.0 -> +0.0, so Arg(x + 0i) of a negative real is +pi, never -pi.
    static constexpr double canon(double v) noexcept { return v == 0.0 ? 0.0 : v; }
};

inline bool operator==(Scalar a, Scalar b) noexcept { return a.re == b.re && a.im == b.im; }
inline bool operator!=(Scalar a, Scalar b) noexcept { return !(a == b); }

inline Scalar operator-(Scalar a) noexcept { return {-a.re, -a.im}; }

inline Scalar operator+(Scalar a, Scalar b) noexcept { return {a.re + b.re, a.im + b.im}; }
inline Scalar operator-(Scalar a, Scalar b) noexcept { return {a.re - b.re, a.im - b.im}; }

inline Scalar operator*(Scalar a, Scalar b) noexcept {
    if (a.is_real() && b.is_real()) return {a.re * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Scalar operator/(Scalar a, Scalar b) {
    if (b.is_real()) {
        if (b.re == 0.0) throw DomainError("division by zero");
        return {a.re / b.re, a.is_real() ? 0.0 : a.im / b.re};
    }
    const std::complex<double> q = std::complex<double>(a.re, a.im) / std::complex<double>(b.re, b.im);
    return {q.real(), q.imag()};
}

inline Scalar& operator+=(Scalar& a, Scalar b) noexcept { return a = a + b; }
inline Scalar& operator-=(Scalar& a, Scalar b) noexcept { return a = a - b; }
inline Scalar& operator*=(Scalar& a, Scalar b) noexcept { return a = a * b; }

/// Euclidean modulus sqrt(re^2 + im^2).
inline double abs(Scalar z) noexcept { return z.is_real() ? std::fabs(z.re) : std::hypot(z.re, z.im); }

inline bool is_finite(Scalar z) noexcept { return std::isfinite(z.re) && std::isfinite(z.im); }

namespace detail {

inline bool is_integral(double v) noexcept {
    return std::isfinite(v) && std::nearbyint(v) == v && std::fabs(v) < 9.007199254740992e15;
}

}  // namespace detail

/// Principal-branch power: pow(z, a) = exp(a * (ln|z| + i Arg z)), Arg z in (-pi, pi].
///
/// Real nonnegative bases and integer exponents of real bases stay exactly
/// real. A zero base with negative exponent is a domain error.
inline Scalar pow(Scalar base, double exponent) {
    if (!std::isfinite(exponent)) throw ParameterError("pow: non-finite exponent");
    if (exponent == 0.0) return {1.0};

    if (base.is_real()) {
        if (base.re == 0.0) {
            if (exponent < 0.0) throw DomainError("pow: zero base with negative exponent");
            return {0.0};
        }
        if (base.re > 0.0 || detail::is_integral(exponent)) return {std::pow(base.re, exponent)};
        const double mag = std::pow(-base.re, exponent);
        const double angle = exponent * std::atan2(base.im, base.re);  // base.im == +0 -> Arg = pi
        return {mag * std::cos(angle), mag * std::sin(angle)};
    }

    const double mod = abs(base);
    if (mod == 0.0) {
        if (exponent < 0.0) throw DomainError("pow: zero base with negative exponent");
        return {0.0};
    }
    const double mag = std::pow(mod, exponent);
    const double angle = exponent * std::atan2(base.im, base.re);
    return {mag * std::cos(angle), mag * std::sin(angle)};
}

inline std::string to_string(Scalar z) {
    if (z.is_real()) return std::to_string(z.re);
    return std::to_string(z.re) + (z.im < 0 ? " - " : " + ") + std::to_string(std::fabs(z.im)) + "i";
}

}  // namespace fracvel

#endif  // FRACVEL_SCALAR_HPP
