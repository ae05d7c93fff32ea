#ifndef FRACVEL_COVARIATION_HPP
#define FRACVEL_COVARIATION_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "fracvel/evaluable.hpp"
#include "fracvel/ladder.hpp"
#include "fracvel/limitfit.hpp"
#include "fracvel/velocity.hpp"

namespace fracvel {

/// Limit estimate of a co-variation, tagged with its order.
struct CovarEstimate : LimitEstimate {
    double order_beta = 1.0;
};

/// Fractional co-variation at a fixed window: delta f * delta g / eps^beta,
/// equivalently the product of the two order-beta/2 variations.
inline Scalar covariation_at(const Evaluable& f, const Evaluable& g, double x, double beta, double eps,
                             Direction dir) {
    detail::require_order(beta, "beta");
    detail::require_positive_eps(eps);
    return directed_delta(f, x, eps, dir) * directed_delta(g, x, eps, dir) / Scalar{std::pow(eps, beta)};
}

namespace detail {

inline std::vector<double> shared_ladder(const Evaluable& f, const Evaluable& g, const EpsLadder& ladder) {
    const auto sf = f.grid_step();
    const auto sg = g.grid_step();
    if (sf && sg && *sf != *sg) throw ParameterError("co-variation: signals must share a grid step");
    if (sf) return ladder.snapped_values(*sf);
    if (sg) return ladder.snapped_values(*sg);
    return ladder.values();
}

inline CovarEstimate as_covar(LimitEstimate est, double beta) {
    CovarEstimate out;
    static_cast<LimitEstimate&>(out) = std::move(est);
    out.order_beta = beta;
    return out;
}

}  // namespace detail

/// Fractional co-variation about x: the ladder-classified limit of
/// covariation_at. This is the quantity by which the fractional product
/// rule deviates from Leibniz.
inline CovarEstimate covariation(const Evaluable& f, const Evaluable& g, double x, double beta, Direction dir,
                                 const EpsLadder& ladder = {}) {
    std::vector<QuotientSample> samples;
    for (double eps : detail::shared_ladder(f, g, ladder))
        samples.push_back({eps, covariation_at(f, g, x, beta, eps, dir)});
    return detail::as_covar(classify_quotients(std::move(samples)), beta);
}

/// C^1 path: classifies
///   (1/beta) * eps^(1-beta) * ( f'(x +- eps) delta g + g'(x +- eps) delta f )
/// over the ladder; agrees with `covariation` for continuously
/// differentiable pairs.
inline CovarEstimate covariation_c1(const ExprPtr& f, const ExprPtr& g, double x, double beta, Direction dir,
                                    const EpsLadder& ladder = {}) {
    detail::require_order(beta, "beta");
    ExprPtr fp, gp;
    try {
        fp = derivative(f);
        gp = derivative(g);
    } catch (const NotDifferentiableError& e) {
        throw NotDifferentiableError(std::string(e.what()) + "; use the ladder estimator `covariation` instead");
    }
    const Evaluable ef{f}, eg{g};
    const double sgn = dir == Direction::Plus ? 1.0 : -1.0;
    std::vector<QuotientSample> samples;
    for (double eps : ladder.values()) {
        const Scalar at = Scalar{x + sgn * eps};
        const Scalar q = Scalar{std::pow(eps, 1.0 - beta) / beta} *
                         (eval(fp, at) * directed_delta(eg, x, eps, dir) +
                          eval(gp, at) * directed_delta(ef, x, eps, dir));
        samples.push_back({eps, q});
    }
    return detail::as_covar(classify_quotients(std::move(samples)), beta);
}

/// [f, f]: the square case of the co-variation.
inline CovarEstimate covariation_square(const Evaluable& f, double x, double beta, Direction dir,
                                        const EpsLadder& ladder = {}) {
    return covariation(f, f, x, beta, dir, ladder);
}

}  // namespace fracvel

#endif  // FRACVEL_COVARIATION_HPP
