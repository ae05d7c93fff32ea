#ifndef FRACVEL_VELOCITY_HPP
#define FRACVEL_VELOCITY_HPP

#include <cmath>
#include <vector>

#include "fracvel/errors.hpp"
#include "fracvel/evaluable.hpp"
#include "fracvel/ladder.hpp"
#include "fracvel/limitfit.hpp"

namespace fracvel {

enum class Direction { Plus, Minus };

inline const char* to_string(Direction d) { return d == Direction::Plus ? "plus" : "minus"; }

inline Scalar directed_delta(const Evaluable& f, double x, double eps, Direction d) {
    return d == Direction::Plus ? delta_plus(f, x, eps) : delta_minus(f, x, eps);
}

namespace detail {

inline void require_order(double beta, const char* name) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError(std::string(name) + " must be in (0, 1]");
}

}  // namespace detail

/// Fractional variation of order beta at window eps: the directed difference
/// divided by eps^beta.
inline Scalar frac_variation(const Evaluable& f, double x, double beta, double eps, Direction dir) {
    detail::require_order(beta, "beta");
    detail::require_positive_eps(eps);
    return directed_delta(f, x, eps, dir) / Scalar{std::pow(eps, beta)};
}

/// Fractional velocity of order alpha: the ladder-classified limit of the
/// fractional variation as eps shrinks. When Finite, the reported value is
/// the quotient at the deepest rung.
inline LimitEstimate velocity(const Evaluable& f, double x, double alpha, Direction dir, const EpsLadder& ladder = {}) {
    detail::require_order(alpha, "alpha");
    std::vector<QuotientSample> samples;
    for (double eps : ladder.values_for(f))
        samples.push_back({eps, frac_variation(f, x, alpha, eps, dir)});
    return classify_quotients(std::move(samples));
}

/// C^1 fast path: classifies (1/beta) * eps^(1-beta) * f'(x +- eps) over the
/// ladder. Matches `velocity` wherever the derivative is continuous near x.
inline LimitEstimate velocity_c1(const ExprPtr& f, double x, double beta, Direction dir,
                                 const EpsLadder& ladder = {}) {
    detail::require_order(beta, "beta");
    ExprPtr fp;
    try {
        fp = derivative(f);
    } catch (const NotDifferentiableError& e) {
        throw NotDifferentiableError(std::string(e.what()) + "; use the ladder estimator `velocity` instead");
    }
    const double sgn = dir == Direction::Plus ? 1.0 : -1.0;
    std::vector<QuotientSample> samples;
    for (double eps : ladder.values()) {
        const Scalar q = Scalar{std::pow(eps, 1.0 - beta) / beta} * eval(fp, Scalar{x + sgn * eps});
        samples.push_back({eps, q});
    }
    return classify_quotients(std::move(samples));
}

}  // namespace fracvel

#endif  // FRACVEL_VELOCITY_HPP
