#ifndef FRACVEL_LIMITFIT_HPP
#define FRACVEL_LIMITFIT_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracvel/errors.hpp"
#include "fracvel/scalar.hpp"

namespace fracvel {

inline constexpr double kSlopeTol = 0.05;       // |slope| below this reads as a finite limit
inline constexpr double kFitTol = 0.98;         // minimum r^2 for Zero / Divergent calls
inline constexpr double kQuotientFloor = 1e-300;
inline constexpr double kSignOscFloor = 1e-12;  // sign flips below this are rounding noise
inline constexpr std::size_t kMinUsablePoints = 4;

enum class Classification { Zero, Finite, Divergent, Inconclusive };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::Zero: return "zero";
        case Classification::Finite: return "finite";
        case Classification::Divergent: return "divergent";
        case Classification::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct QuotientSample {
    double eps;
    Scalar value;
};

/// Classified limit of a quotient sequence over a shrinking ladder.
///
/// The call is made from the least-squares slope of log|q| against log eps:
/// a flat line (|slope| <= kSlopeTol) means the quotient has settled to a
/// finite value, a reliably positive slope means it vanishes, a reliably
/// negative one means it diverges. `value` is the quotient at the deepest
/// rung (the fit intercept estimates log|q| and would lose sign and phase).
struct LimitEstimate {
    Classification classification = Classification::Inconclusive;
    std::optional<Scalar> value;  // set only when Finite
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<QuotientSample> samples;  // the usable rungs, descending eps
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of y against x; r^2 is 1 when the data is flat
/// (a constant explains it perfectly).
inline LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    if (syy <= 1e-24) {
        fit.r_squared = 1.0;
    } else {
        const double ss_res = syy - fit.slope * sxy;
        fit.r_squared = std::min(1.0, std::max(0.0, 1.0 - ss_res / syy));
    }
    return fit;
}

/// Classifies ladder quotients. Non-finite samples and |q| below the
/// underflow guard are dropped; fewer than four survivors is an error,
/// except for the degenerate ladder whose rungs are all (sub-floor) zero,
/// which is a Zero verdict: quotients of a constant vanish identically and
/// decay faster than any power, reported as slope = +inf.
/// Real quotients that flip sign between consecutive rungs (above rounding
/// noise) have no one-sided limit and force Inconclusive.
inline LimitEstimate classify_quotients(std::vector<QuotientSample> samples) {
    std::vector<QuotientSample> usable;
    usable.reserve(samples.size());
    std::size_t zero_count = 0;
    for (const auto& s : samples) {
        if (!is_finite(s.value)) continue;
        if (abs(s.value) >= kQuotientFloor)
            usable.push_back(s);
        else
            ++zero_count;
    }

    if (usable.empty() && zero_count >= kMinUsablePoints) {
        LimitEstimate est;
        est.classification = Classification::Zero;
        est.slope = std::numeric_limits<double>::infinity();
        est.intercept = 0.0;
        est.r_squared = 1.0;
        est.samples = std::move(samples);
        return est;
    }

    if (usable.size() < kMinUsablePoints)
        throw InsufficientDataError("classify: only " + std::to_string(usable.size()) +
                                    " usable ladder points (need >= " + std::to_string(kMinUsablePoints) + ")");

    std::vector<double> xs, ys;
    xs.reserve(usable.size());
    ys.reserve(usable.size());
    for (const auto& s : usable) {
        xs.push_back(std::log(s.eps));
        ys.push_back(std::log(abs(s.value)));
    }
    const LinearFit fit = fit_line(xs, ys);

    LimitEstimate est;
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.samples = std::move(usable);

    bool sign_flip = false;
    for (std::size_t i = 0; i + 1 < est.samples.size(); ++i) {
        const Scalar a = est.samples[i].value, b = est.samples[i + 1].value;
        if (a.is_real() && b.is_real() && a.re * b.re < 0.0 && std::fabs(a.re) > kSignOscFloor &&
            std::fabs(b.re) > kSignOscFloor) {
            sign_flip = true;
            break;
        }
    }
    if (sign_flip) {
        est.classification = Classification::Inconclusive;
        return est;
    }

    if (std::fabs(fit.slope) <= kSlopeTol) {
        est.classification = Classification::Finite;
        est.value = est.samples.back().value;  // deepest rung preserves sign and phase
    } else if (fit.slope > kSlopeTol && fit.r_squared >= kFitTol) {
        est.classification = Classification::Zero;
    } else if (fit.slope < -kSlopeTol && fit.r_squared >= kFitTol) {
        est.classification = Classification::Divergent;
    } else {
        est.classification = Classification::Inconclusive;
    }
    return est;
}

}  // namespace fracvel

#endif  // FRACVEL_LIMITFIT_HPP
