#ifndef FRACVEL_EVALUABLE_HPP
#define FRACVEL_EVALUABLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <variant>

#include "fracvel/errors.hpp"
#include "fracvel/expr.hpp"
#include "fracvel/scalar.hpp"
#include "fracvel/signal.hpp"

namespace fracvel {

/// A function under analysis: either a closed-form expression (evaluable on
/// the whole real line, complex extension included) or a sampled signal
/// (evaluable on its grid range only).
class Evaluable {
  public:
    Evaluable(ExprPtr f) : repr_(std::move(f)) {}                 // NOLINT: implicit by design
    Evaluable(SampledSignal s) : repr_(std::move(s)) {}           // NOLINT: implicit by design

    bool is_expr() const noexcept { return std::holds_alternative<ExprPtr>(repr_); }
    const ExprPtr& expr() const { return std::get<ExprPtr>(repr_); }
    const SampledSignal& signal() const { return std::get<SampledSignal>(repr_); }

    Scalar operator()(double x) const {
        if (is_expr()) return eval(expr(), Scalar{x});
        return Scalar{signal().eval_nearest(x)};
    }

    double domain_lo() const {
        return is_expr() ? -std::numeric_limits<double>::infinity() : signal().domain_lo();
    }
    double domain_hi() const {
        return is_expr() ? std::numeric_limits<double>::infinity() : signal().domain_hi();
    }

    /// Grid spacing for sampled signals, nullopt for expressions.
    std::optional<double> grid_step() const {
        if (is_expr()) return std::nullopt;
        return signal().step();
    }

  private:
    std::variant<ExprPtr, SampledSignal> repr_;
};

namespace detail {

inline void require_positive_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be positive and finite");
}

}  // namespace detail

/// Forward difference f(x + eps) - f(x).
inline Scalar delta_plus(const Evaluable& f, double x, double eps) {
    detail::require_positive_eps(eps);
    return f(x + eps) - f(x);
}

/// Backward difference f(x) - f(x - eps).
inline Scalar delta_minus(const Evaluable& f, double x, double eps) {
    detail::require_positive_eps(eps);
    return f(x) - f(x - eps);
}

/// Second-order difference f(x + eps) - 2 f(x) + f(x - eps), computed as
/// delta_plus - delta_minus so the three-way identity is bit-exact.
inline Scalar delta_second(const Evaluable& f, double x, double eps) {
    return delta_plus(f, x, eps) - delta_minus(f, x, eps);
}

/// Tolerance for oscillation-based inequalities at grid resolution.
inline double osc_tolerance(double result) { return 1e-6 * (1.0 + std::fabs(result)); }

namespace detail {

inline double grid_oscillation(const Evaluable& f, double lo, double hi, int points) {
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (int i = 0; i < points; ++i) {
        // endpoints placed exactly so monotone oscillation equals |f(hi) - f(lo)| bit-exactly
        const double t = i == 0 ? lo
                       : i == points - 1
                           ? hi
                           : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(points - 1));
        const Scalar v = f(t);
        if (!v.is_real())
            throw NotRealError("oscillation: complex value at t = " + std::to_string(t));
        vmin = std::min(vmin, v.re);
        vmax = std::max(vmax, v.re);
    }
    return vmax - vmin;
}

}  // namespace detail

/// Oscillation sup f - inf f over [lo, hi].
///
/// Expressions are sampled on a 1025-point uniform grid and re-estimated at
/// 4097 points; the refined value is reported when the two differ by more
/// than 1e-6 relative. Sampled signals use the exact sup/inf over in-range
/// samples.
inline double oscillation(const Evaluable& f, double lo, double hi) {
    if (!(lo < hi)) throw ParameterError("oscillation: requires lo < hi");
    if (f.is_expr()) {
        const double coarse = detail::grid_oscillation(f, lo, hi, 1025);
        const double fine = detail::grid_oscillation(f, lo, hi, 4097);
        if (fine > 0.0 && std::fabs(fine - coarse) > 1e-6 * fine) return fine;
        return coarse;
    }

    const SampledSignal& s = f.signal();
    const double slack = 1e-9 * s.step();
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = s.origin() + s.step() * static_cast<double>(i);
        if (t < lo - slack || t > hi + slack) continue;
        vmin = std::min(vmin, s.values()[i]);
        vmax = std::max(vmax, s.values()[i]);
    }
    if (!(vmin <= vmax)) throw RangeError("oscillation: no samples inside the interval");
    return vmax - vmin;
}

}  // namespace fracvel

#endif  // FRACVEL_EVALUABLE_HPP
