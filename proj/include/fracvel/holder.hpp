#ifndef FRACVEL_HOLDER_HPP
#define FRACVEL_HOLDER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracvel/errors.hpp"
#include "fracvel/evaluable.hpp"
#include "fracvel/format.hpp"
#include "fracvel/ladder.hpp"
#include "fracvel/limitfit.hpp"
#include "fracvel/velocity.hpp"

namespace fracvel {

inline constexpr double kLabelMargin = 0.05;   // singular means min alpha below 1 - margin
inline constexpr double kOscFloor = 1e-14;     // oscillations below this are indistinguishable from flat
inline constexpr double kAlphaReportMax = 1.5;
inline constexpr double kAlphaReportMin = 1e-3;

/// Pointwise Holder exponent read off the scaling of the oscillation:
/// alpha_hat is the least-squares slope of log osc against log eps over the
/// window ladder, and exp(intercept) estimates the Holder constant.
struct HolderEstimate {
    double alpha_hat = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    Direction direction = Direction::Plus;
    EpsLadder window;
};

enum class RowLabel { Singular, Smooth, Inconclusive };

inline const char* to_string(RowLabel l) {
    switch (l) {
        case RowLabel::Singular: return "singular";
        case RowLabel::Smooth: return "smooth";
        case RowLabel::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ScanRow {
    double x = 0.0;
    std::optional<HolderEstimate> alpha_plus;
    std::optional<HolderEstimate> alpha_minus;
    RowLabel label = RowLabel::Inconclusive;
};

/// Fits the oscillation scaling exponent at x over one-sided windows.
/// Oscillation is used rather than the velocity quotient: it is sign-free
/// and monotone in the window size, which keeps the log-log fit stable; the
/// velocity trichotomy stays available as an independent cross-check.
inline HolderEstimate estimate_holder(const Evaluable& f, double x, Direction dir, const EpsLadder& ladder = {}) {
    std::vector<double> xs, ys;
    for (double eps : ladder.values_for(f)) {
        const double osc = dir == Direction::Plus ? oscillation(f, x, x + eps) : oscillation(f, x - eps, x);
        if (osc < kOscFloor) continue;
        xs.push_back(std::log(eps));
        ys.push_back(std::log(osc));
    }
    if (xs.size() < kMinUsablePoints)
        throw FlatSignalError("holder: fewer than " + std::to_string(kMinUsablePoints) +
                              " nonzero oscillation windows; function is locally constant at this resolution");
    const LinearFit fit = fit_line(xs, ys);

    HolderEstimate est;
    est.alpha_hat = std::clamp(fit.slope, kAlphaReportMin, kAlphaReportMax);
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.direction = dir;
    est.window = ladder;
    return est;
}

/// Checks the estimated exponent against the velocity trichotomy: order
/// alpha_hat - 0.1 should vanish, order alpha_hat should settle (Finite, or
/// Inconclusive when the point is not cleanly one-sided), and order
/// alpha_hat + 0.1 should diverge. Legs whose order leaves (0, 1] are
/// skipped; returns true iff every leg that runs agrees.
inline bool cross_check_trichotomy(const Evaluable& f, double x, double alpha_hat, Direction dir,
                                   const EpsLadder& ladder = {}) {
    if (!(alpha_hat > 0.0 && alpha_hat <= 1.0)) throw ParameterError("cross_check: alpha_hat must be in (0, 1]");

    const double lo = alpha_hat - 0.1;
    if (lo > 0.0 && velocity(f, x, lo, dir, ladder).classification != Classification::Zero) return false;

    const Classification mid = velocity(f, x, alpha_hat, dir, ladder).classification;
    if (mid != Classification::Finite && mid != Classification::Inconclusive) return false;

    const double hi = alpha_hat + 0.1;
    if (hi <= 1.0 && velocity(f, x, hi, dir, ladder).classification != Classification::Divergent) return false;

    return true;
}

namespace detail {

inline RowLabel label_row(const std::optional<HolderEstimate>& p, const std::optional<HolderEstimate>& m) {
    if (!p || !m) return RowLabel::Inconclusive;
    if (p->r_squared < kFitTol || m->r_squared < kFitTol) return RowLabel::Inconclusive;
    const double a = std::min(p->alpha_hat, m->alpha_hat);
    return a < 1.0 - kLabelMargin ? RowLabel::Singular : RowLabel::Smooth;
}

}  // namespace detail

/// Scans [lo, hi] on a uniform grid, estimating both one-sided exponents at
/// every point. Per-point failures are recorded as inconclusive rows; the
/// scan itself never aborts. Rows come out ordered by x.
inline std::vector<ScanRow> scan(const Evaluable& f, double lo, double hi, int points, const EpsLadder& ladder = {}) {
    if (!(lo < hi)) throw ParameterError("scan: requires lo < hi");
    if (points < 2) throw ParameterError("scan: requires at least 2 points");

    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        ScanRow row;
        row.x = i == 0 ? lo
              : i == points - 1 ? hi
                                : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(points - 1));
        try {
            row.alpha_plus = estimate_holder(f, row.x, Direction::Plus, ladder);
        } catch (const Error&) {
        }
        try {
            row.alpha_minus = estimate_holder(f, row.x, Direction::Minus, ladder);
        } catch (const Error&) {
        }
        row.label = detail::label_row(row.alpha_plus, row.alpha_minus);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Bit-stable CSV rendering of a scan: floats as shortest round-trip
/// decimals, "nan" for failed estimates.
inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "x,alpha_plus,r2_plus,alpha_minus,r2_minus,label\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        out += format_double(row.x);
        out += ',';
        out += format_double(row.alpha_plus ? row.alpha_plus->alpha_hat : nan);
        out += ',';
        out += format_double(row.alpha_plus ? row.alpha_plus->r_squared : nan);
        out += ',';
        out += format_double(row.alpha_minus ? row.alpha_minus->alpha_hat : nan);
        out += ',';
        out += format_double(row.alpha_minus ? row.alpha_minus->r_squared : nan);
        out += ',';
        out += to_string(row.label);
        out += '\n';
    }
    return out;
}

}  // namespace fracvel

#endif  // FRACVEL_HOLDER_HPP
