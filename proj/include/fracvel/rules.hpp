#ifndef FRACVEL_RULES_HPP
#define FRACVEL_RULES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracvel/covariation.hpp"
#include "fracvel/errors.hpp"
#include "fracvel/evaluable.hpp"
#include "fracvel/ladder.hpp"
#include "fracvel/limitfit.hpp"
#include "fracvel/velocity.hpp"

namespace fracvel {

enum class RuleKind { ProductPlus, ProductMinus, Square, Quotient, Reciprocal, LeibnizLimit };

inline const char* to_string(RuleKind r) {
    switch (r) {
        case RuleKind::ProductPlus: return "product_plus";
        case RuleKind::ProductMinus: return "product_minus";
        case RuleKind::Square: return "square";
        case RuleKind::Quotient: return "quotient";
        case RuleKind::Reciprocal: return "reciprocal";
        case RuleKind::LeibnizLimit: return "leibniz_limit";
    }
    return "?";
}

/// One side of a rule: a single finite-window value, or a classified limit.
using RuleSide = std::variant<Scalar, LimitEstimate>;

struct RuleTolerances {
    double finite_eps_scale = 1e-12;  // finite-window identities: residual <= scale * (1 + |lhs|)
    double value_rel = 1e-6;          // Finite/Finite limit agreement, relative
    double value_abs = 1e-9;          // absolute floor for near-zero limits
};

/// Outcome of one rule verification. For finite-window identities `passed`
/// means the residual is at rounding scale; for limit identities it means
/// the classifications match and Finite values agree within tolerance.
struct RuleReport {
    RuleKind rule;
    RuleSide lhs;
    RuleSide rhs;
    double residual = 0.0;
    bool passed = false;
    double tolerance = 0.0;
};

/// Structural product of two functions. Expression pairs become a Mul node
/// so both sides of every rule run through the same evaluation pipeline;
/// sampled pairs on one grid multiply pointwise.
inline Evaluable product(const Evaluable& f, const Evaluable& g) {
    if (f.is_expr() && g.is_expr()) return Evaluable{Expr::mul(f.expr(), g.expr())};
    if (!f.is_expr() && !g.is_expr()) {
        const auto& a = f.signal();
        const auto& b = g.signal();
        if (!a.same_grid(b)) throw ParameterError("product: signals must share origin, step and length");
        std::vector<double> vals(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) vals[i] = a.values()[i] * b.values()[i];
        return Evaluable{SampledSignal(a.origin(), a.step(), std::move(vals))};
    }
    throw ParameterError("product: cannot mix an expression with a sampled signal");
}

inline Evaluable quotient(const Evaluable& f, const Evaluable& g) {
    if (f.is_expr() && g.is_expr()) return Evaluable{Expr::div(f.expr(), g.expr())};
    if (!f.is_expr() && !g.is_expr()) {
        const auto& a = f.signal();
        const auto& b = g.signal();
        if (!a.same_grid(b)) throw ParameterError("quotient: signals must share origin, step and length");
        std::vector<double> vals(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b.values()[i] == 0.0) throw DomainError("quotient: divisor signal vanishes at a sample");
            vals[i] = a.values()[i] / b.values()[i];
        }
        return Evaluable{SampledSignal(a.origin(), a.step(), std::move(vals))};
    }
    throw ParameterError("quotient: cannot mix an expression with a sampled signal");
}

inline Evaluable reciprocal(const Evaluable& g) {
    return quotient(Evaluable{Expr::constant(Scalar{1.0})}, g);
}

namespace detail {

struct LimitComparison {
    bool class_match = false;
    bool values_ok = true;   // vacuously true unless both sides are Finite
    double residual = 0.0;
    double tolerance = 0.0;
};

inline LimitComparison compare_limits(const LimitEstimate& lhs, const LimitEstimate& rhs,
                                      const RuleTolerances& tol) {
    LimitComparison cmp;
    cmp.class_match = lhs.classification == rhs.classification;
    cmp.tolerance = tol.value_abs;
    if (lhs.classification == Classification::Finite && rhs.classification == Classification::Finite) {
        const Scalar a = *lhs.value, b = *rhs.value;
        cmp.residual = abs(a - b);
        cmp.tolerance = std::max(tol.value_abs, tol.value_rel * std::max(abs(a), abs(b)));
        cmp.values_ok = cmp.residual <= cmp.tolerance;
    }
    return cmp;
}

inline Scalar real_value_at(const Evaluable& f, double x, const char* what) {
    const Scalar v = f(x);
    if (!is_finite(v)) throw DomainError(std::string(what) + ": non-finite value at x");
    return v;
}

inline double guarded_divisor(const Evaluable& g, double x) {
    const Scalar gx = g(x);
    if (abs(gx) < 1e-9) throw DomainError("divisor function too close to zero at x (|g(x)| < 1e-9)");
    if (!gx.is_real()) throw NotRealError("divisor function must be real at x");
    return gx.re;
}

// Shared body of the product/square rules: the finite-window identity is
// verified at every rung, then both sides are classified as limits.
//
// The identity residual is bounded at the difference level, where rounding
// is a few ulps of the evaluation products; the reported residual and
// tolerance sit at the quotient level (divided by eps^beta) from the rung
// with the worst residual-to-tolerance ratio, so `residual <= tolerance`
// still decides the finite-window part of `passed`.
inline RuleReport product_family_check(const Evaluable& f, const Evaluable& g, double x, double beta, Direction dir,
                                       const EpsLadder& ladder, const RuleTolerances& tol, double covar_sign,
                                       RuleKind rule) {
    const Evaluable fg = product(f, g);
    const Scalar f_at = real_value_at(f, x, "f");
    const Scalar g_at = real_value_at(g, x, "g");
    const auto eps_list = shared_ladder(f, fg, ladder);

    std::vector<QuotientSample> lhs_samples, rhs_samples;
    double worst_ratio = 0.0, worst_resid = 0.0, worst_tol = 0.0;
    bool first = true;
    for (double eps : eps_list) {
        const double pb = std::pow(eps, beta);
        const Scalar df = directed_delta(f, x, eps, dir);
        const Scalar dg = directed_delta(g, x, eps, dir);
        const Scalar dfg = directed_delta(fg, x, eps, dir);
        const Scalar rhs_diff = Scalar{covar_sign} * df * dg + g_at * df + f_at * dg;
        const double resid_diff = abs(dfg - rhs_diff);
        const double eval_bound = (abs(f_at) + abs(df)) * (abs(g_at) + abs(dg));
        const double tol_diff = tol.finite_eps_scale * (1.0 + eval_bound);

        const double ratio = resid_diff / tol_diff;
        if (first || ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_resid = resid_diff / pb;
            worst_tol = tol_diff / pb;
            first = false;
        }
        lhs_samples.push_back({eps, dfg / Scalar{pb}});
        rhs_samples.push_back({eps, rhs_diff / Scalar{pb}});
    }

    RuleReport report;
    report.rule = rule;
    report.residual = worst_resid;
    report.tolerance = worst_tol;

    const LimitEstimate lhs = classify_quotients(std::move(lhs_samples));
    const LimitEstimate rhs = classify_quotients(std::move(rhs_samples));
    const LimitComparison cmp = compare_limits(lhs, rhs, tol);
    report.passed = worst_ratio <= 1.0 && cmp.class_match && cmp.values_ok;
    report.lhs = lhs;
    report.rhs = rhs;
    return report;
}

}  // namespace detail

/// Finite-window product identity (an exact algebraic rearrangement):
///   forward:  D+(fg) =  D+f D+g + g(x) D+f + f(x) D+g
///   backward: D-(fg) = -D-f D-g + g(x) D-f + f(x) D-g
/// The residual must sit at rounding scale for every f, g, x, eps.
inline RuleReport check_product_lemma(const Evaluable& f, const Evaluable& g, double x, double eps, Direction dir,
                                      const RuleTolerances& tol = {}) {
    const Evaluable fg = product(f, g);
    const Scalar f_at = detail::real_value_at(f, x, "f");
    const Scalar g_at = detail::real_value_at(g, x, "g");

    const Scalar df = directed_delta(f, x, eps, dir);
    const Scalar dg = directed_delta(g, x, eps, dir);
    const Scalar lhs = directed_delta(fg, x, eps, dir);
    const double cross_sign = dir == Direction::Plus ? 1.0 : -1.0;
    const Scalar rhs = Scalar{cross_sign} * df * dg + g_at * df + f_at * dg;

    RuleReport report;
    report.rule = dir == Direction::Plus ? RuleKind::ProductPlus : RuleKind::ProductMinus;
    report.lhs = lhs;
    report.rhs = rhs;
    report.residual = abs(lhs - rhs);
    report.tolerance = tol.finite_eps_scale * (1.0 + abs(lhs));
    report.passed = report.residual <= report.tolerance;
    return report;
}

/// Product rule for the fractional variation, with the directed co-variation
/// correction: +[f,g] forward, -[f,g] backward. Checks the identity at every
/// rung and compares the classified limits of both sides.
inline RuleReport check_product_rule(const Evaluable& f, const Evaluable& g, double x, double beta, Direction dir,
                                     const EpsLadder& ladder = {}, const RuleTolerances& tol = {}) {
    const double covar_sign = dir == Direction::Plus ? 1.0 : -1.0;
    return detail::product_family_check(f, g, x, beta, dir, ladder, tol, covar_sign,
                                        dir == Direction::Plus ? RuleKind::ProductPlus : RuleKind::ProductMinus);
}

/// Same check with an explicit sign on the correction term. Exists so tests
/// can demonstrate that the opposite sign breaks the identity; not part of
/// the verified rule set.
inline RuleReport check_product_rule_with_sign(const Evaluable& f, const Evaluable& g, double x, double beta,
                                               Direction dir, double covar_sign, const EpsLadder& ladder = {},
                                               const RuleTolerances& tol = {}) {
    return detail::product_family_check(f, g, x, beta, dir, ladder, tol, covar_sign,
                                        dir == Direction::Plus ? RuleKind::ProductPlus : RuleKind::ProductMinus);
}

/// Square case: v(f^2) = 2 v(f) f(x) +- [f,f].
inline RuleReport check_square_rule(const Evaluable& f, double x, double beta, Direction dir,
                                    const EpsLadder& ladder = {}, const RuleTolerances& tol = {}) {
    const double covar_sign = dir == Direction::Plus ? 1.0 : -1.0;
    return detail::product_family_check(f, f, x, beta, dir, ladder, tol, covar_sign, RuleKind::Square);
}

/// Quotient rule (a limit identity, not a finite-window one):
///   forward:  v+(f/g) = (v+f g(x) - v+g f(x) - [f,g]+) / g(x)^2
///   backward: v-(f/g) = (v-f g(x) - v-g f(x) + [f,g]-) / g(x)^2
inline RuleReport check_quotient_rule(const Evaluable& f, const Evaluable& g, double x, double beta, Direction dir,
                                      const EpsLadder& ladder = {}, const RuleTolerances& tol = {}) {
    const double gx = detail::guarded_divisor(g, x);
    const Scalar f_at = detail::real_value_at(f, x, "f");
    const double covar_sign = dir == Direction::Plus ? 1.0 : -1.0;
    const Evaluable fg = quotient(f, g);
    const auto eps_list = detail::shared_ladder(f, fg, ladder);

    std::vector<QuotientSample> lhs_samples, rhs_samples;
    for (double eps : eps_list) {
        lhs_samples.push_back({eps, frac_variation(fg, x, beta, eps, dir)});
        const Scalar rhs_q = (frac_variation(f, x, beta, eps, dir) * Scalar{gx} -
                              frac_variation(g, x, beta, eps, dir) * f_at -
                              Scalar{covar_sign} * covariation_at(f, g, x, beta, eps, dir)) /
                             Scalar{gx * gx};
        rhs_samples.push_back({eps, rhs_q});
    }

    const LimitEstimate lhs = classify_quotients(std::move(lhs_samples));
    const LimitEstimate rhs = classify_quotients(std::move(rhs_samples));
    const detail::LimitComparison cmp = detail::compare_limits(lhs, rhs, tol);

    RuleReport report;
    report.rule = RuleKind::Quotient;
    report.lhs = lhs;
    report.rhs = rhs;
    report.residual = cmp.residual;
    report.tolerance = cmp.tolerance;
    report.passed = cmp.class_match && cmp.values_ok;
    return report;
}

/// Reciprocal identities, both checked by independent ladder evaluation:
///   [f, 1/g] = -[f,g] / g(x)^2     and     v(1/g) = -v(g) / g(x)^2.
/// The reported lhs/rhs are the co-variation identity's sides; the residual
/// covers whichever of the two identities disagrees more.
inline RuleReport reciprocal_identities(const Evaluable& f, const Evaluable& g, double x, double beta, Direction dir,
                                        const EpsLadder& ladder = {}, const RuleTolerances& tol = {}) {
    const double gx = detail::guarded_divisor(g, x);
    const Scalar inv_g2{-1.0 / (gx * gx)};
    const Evaluable inv = reciprocal(g);
    const auto eps_list = detail::shared_ladder(f, inv, ladder);

    std::vector<QuotientSample> covar_lhs, covar_rhs, vel_lhs, vel_rhs;
    for (double eps : eps_list) {
        covar_lhs.push_back({eps, covariation_at(f, inv, x, beta, eps, dir)});
        covar_rhs.push_back({eps, inv_g2 * covariation_at(f, g, x, beta, eps, dir)});
        vel_lhs.push_back({eps, frac_variation(inv, x, beta, eps, dir)});
        vel_rhs.push_back({eps, inv_g2 * frac_variation(g, x, beta, eps, dir)});
    }

    const LimitEstimate cl = classify_quotients(std::move(covar_lhs));
    const LimitEstimate cr = classify_quotients(std::move(covar_rhs));
    const LimitEstimate vl = classify_quotients(std::move(vel_lhs));
    const LimitEstimate vr = classify_quotients(std::move(vel_rhs));

    const detail::LimitComparison cmp_c = detail::compare_limits(cl, cr, tol);
    const detail::LimitComparison cmp_v = detail::compare_limits(vl, vr, tol);

    RuleReport report;
    report.rule = RuleKind::Reciprocal;
    report.lhs = cl;
    report.rhs = cr;
    report.residual = std::max(cmp_c.residual, cmp_v.residual);
    report.tolerance = std::max(cmp_c.tolerance, cmp_v.tolerance);
    report.passed = cmp_c.class_match && cmp_c.values_ok && cmp_v.class_match && cmp_v.values_ok;
    return report;
}

/// Order-1 sanity of the whole family on differentiable inputs:
///   (a) the finite-window identity holds exactly at every rung,
///   (b) both co-variations classify Zero,
///   (c) the order-1 velocity of fg equals f'(x) g(x) + g'(x) f(x).
inline RuleReport leibniz_limit_check(const ExprPtr& f, const ExprPtr& g, double x, const EpsLadder& ladder = {},
                                      const RuleTolerances& tol = {}) {
    const ExprPtr fp = derivative(f);
    const ExprPtr gp = derivative(g);
    const Evaluable ef{f}, eg{g};
    const Scalar f_at = eval(f, Scalar{x});
    const Scalar g_at = eval(g, Scalar{x});
    const Scalar leibniz = eval(fp, Scalar{x}) * g_at + eval(gp, Scalar{x}) * f_at;

    const Evaluable fg = product(ef, eg);
    bool finite_eps_ok = true;
    for (Direction dir : {Direction::Plus, Direction::Minus}) {
        const double cs = dir == Direction::Plus ? 1.0 : -1.0;
        for (double eps : ladder.values()) {
            const Scalar df = directed_delta(ef, x, eps, dir);
            const Scalar dg = directed_delta(eg, x, eps, dir);
            const Scalar dfg = directed_delta(fg, x, eps, dir);
            const double resid = abs(dfg - (Scalar{cs} * df * dg + g_at * df + f_at * dg));
            const double eval_bound = (abs(f_at) + abs(df)) * (abs(g_at) + abs(dg));
            finite_eps_ok = finite_eps_ok && resid <= tol.finite_eps_scale * (1.0 + eval_bound);
        }
    }

    const bool covar_zero = covariation(ef, eg, x, 1.0, Direction::Plus, ladder).classification == Classification::Zero &&
                            covariation(ef, eg, x, 1.0, Direction::Minus, ladder).classification == Classification::Zero;

    double residual = 0.0;
    bool velocities_ok = true;
    LimitEstimate shown;
    for (Direction dir : {Direction::Plus, Direction::Minus}) {
        const LimitEstimate v = velocity(fg, x, 1.0, dir, ladder);
        if (dir == Direction::Plus) shown = v;
        if (v.classification != Classification::Finite) {
            velocities_ok = false;
            continue;
        }
        const double r = abs(*v.value - leibniz);
        residual = std::max(residual, r);
        velocities_ok = velocities_ok && r <= std::max(tol.value_abs, tol.value_rel * abs(leibniz));
    }

    RuleReport report;
    report.rule = RuleKind::LeibnizLimit;
    report.lhs = shown;
    report.rhs = leibniz;
    report.residual = residual;
    report.tolerance = std::max(tol.value_abs, tol.value_rel * abs(leibniz));
    report.passed = finite_eps_ok && covar_zero && velocities_ok;
    return report;
}

/// Combined differentiable form of the product rule: classifies
///   (1/beta) eps^(1-beta) [ g'(x+-eps) f(x) + g(x) f'(x+-eps)
///                           +- ( g'(x+-eps) Df + f'(x+-eps) Dg ) ]
/// over the ladder. Agrees with velocity(f*g) wherever both apply.
inline LimitEstimate combined_c1_product(const ExprPtr& f, const ExprPtr& g, double x, double beta, Direction dir,
                                         const EpsLadder& ladder = {}) {
    detail::require_order(beta, "beta");
    const ExprPtr fp = derivative(f);
    const ExprPtr gp = derivative(g);
    const Evaluable ef{f}, eg{g};
    const Scalar f_at = eval(f, Scalar{x});
    const Scalar g_at = eval(g, Scalar{x});
    const double sgn = dir == Direction::Plus ? 1.0 : -1.0;

    std::vector<QuotientSample> samples;
    for (double eps : ladder.values()) {
        const Scalar at{x + sgn * eps};
        const Scalar fp_at = eval(fp, at);
        const Scalar gp_at = eval(gp, at);
        const Scalar base = gp_at * f_at + g_at * fp_at;
        const Scalar cross = gp_at * directed_delta(ef, x, eps, dir) + fp_at * directed_delta(eg, x, eps, dir);
        samples.push_back({eps, Scalar{std::pow(eps, 1.0 - beta) / beta} * (base + Scalar{sgn} * cross)});
    }
    return classify_quotients(std::move(samples));
}

}  // namespace fracvel

#endif  // FRACVEL_RULES_HPP
