#ifndef FRACVEL_LADDER_HPP
#define FRACVEL_LADDER_HPP

#include <cmath>
#include <vector>

#include "fracvel/errors.hpp"
#include "fracvel/evaluable.hpp"

namespace fracvel {

inline constexpr double kEpsUnderflowGuard = 1e-12;

/// Geometric sequence of window sizes eps_k = eps0 * ratio^k, k < count,
/// driving every limit estimate. Defaults span eps in [3e-7, 1e-2], inside
/// double-precision comfort for orders up to 1.
struct EpsLadder {
    double eps0 = 1e-2;
    double ratio = 0.5;
    int count = 16;

    EpsLadder() = default;
    EpsLadder(double eps0_, double ratio_, int count_) : eps0(eps0_), ratio(ratio_), count(count_) { validate(); }

    void validate() const {
        if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw ParameterError("ladder: eps0 must be positive and finite");
        if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("ladder: ratio must be in (0, 1)");
        if (count < 4) throw ParameterError("ladder: count must be >= 4");
        if (!(eps0 * std::pow(ratio, count - 1) > kEpsUnderflowGuard))
            throw ParameterError("ladder: smallest eps would fall below the 1e-12 underflow guard");
    }

    /// The raw ladder, descending.
    std::vector<double> values() const {
        validate();
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(count));
        double e = eps0;
        for (int k = 0; k < count; ++k) {
            out.push_back(e);
            e *= ratio;
        }
        return out;
    }

    /// Ladder snapped to positive integer multiples of `step`, deduplicated
    /// (snapping collapses neighbouring rungs once eps drops near the grid).
    std::vector<double> snapped_values(double step) const {
        if (!(step > 0.0)) throw ParameterError("ladder: snap step must be positive");
        std::vector<double> out;
        for (double e : values()) {
            double m = std::round(e / step);
            if (m < 1.0) m = 1.0;
            const double snapped = m * step;
            if (out.empty() || snapped != out.back()) out.push_back(snapped);
        }
        return out;
    }

    /// Ladder appropriate for `f`: snapped for sampled signals, raw otherwise.
    std::vector<double> values_for(const Evaluable& f) const {
        if (auto step = f.grid_step()) return snapped_values(*step);
        return values();
    }
};

}  // namespace fracvel

#endif  // FRACVEL_LADDER_HPP
