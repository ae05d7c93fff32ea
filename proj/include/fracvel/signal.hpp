#ifndef FRACVEL_SIGNAL_HPP
#define FRACVEL_SIGNAL_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracvel/errors.hpp"

namespace fracvel {

/// Uniform-grid real samples. Evaluation is nearest-sample (step function):
/// interpolation would inject artificial smoothness and corrupt scaling
/// estimates, so window sizes are snapped to grid multiples instead.
class SampledSignal {
  public:
    SampledSignal(double origin, double step, std::vector<double> values)
        : origin_(origin), step_(step), values_(std::move(values)) {
        if (!(step_ > 0.0) || !std::isfinite(step_)) throw ParameterError("signal: step must be positive and finite");
        if (values_.empty()) throw ParameterError("signal: values must be non-empty");
        if (!std::isfinite(origin_)) throw ParameterError("signal: origin must be finite");
        for (double v : values_)
            if (!std::isfinite(v)) throw ParameterError("signal: all values must be finite");
    }

    double origin() const noexcept { return origin_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double domain_lo() const noexcept { return origin_; }
    double domain_hi() const noexcept { return origin_ + step_ * static_cast<double>(values_.size() - 1); }

    /// Value of the sample nearest to `x`; `x` must lie within the grid range
    /// (up to a 1e-9 * step slack for floating-point grids).
    double eval_nearest(double x) const {
        const double slack = 1e-9 * step_;
        if (x < domain_lo() - slack || x > domain_hi() + slack)
            throw RangeError("signal: abscissa " + std::to_string(x) + " outside [" + std::to_string(domain_lo()) +
                             ", " + std::to_string(domain_hi()) + "]");
        auto idx = static_cast<long long>(std::llround((x - origin_) / step_));
        if (idx < 0) idx = 0;
        if (idx >= static_cast<long long>(values_.size())) idx = static_cast<long long>(values_.size()) - 1;
        return values_[static_cast<std::size_t>(idx)];
    }

    bool same_grid(const SampledSignal& other) const noexcept {
        return origin_ == other.origin_ && step_ == other.step_ && values_.size() == other.values_.size();
    }

  private:
    double origin_;
    double step_;
    std::vector<double> values_;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and CR
        std::size_t b = cell.find_first_not_of(" \t\r");
        std::size_t e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

inline double parse_cell(const std::string& cell, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError("csv: cannot parse number '" + cell + "' on line " + std::to_string(line_no), line_no);
    }
}

}  // namespace detail

/// Reads a signal from CSV. Two layouts are accepted:
///   - header "x,y": abscissae must be uniformly spaced (each gap within
///     1e-9 relative of the mean step) and strictly increasing;
///   - header "y": raw samples, caller supplies origin and step.
inline SampledSignal read_signal_csv(std::istream& in, double origin = 0.0, double step = 0.0) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input", 0);
    const auto header = detail::split_csv_line(line);

    std::vector<double> xs, ys;
    std::size_t line_no = 1;
    const bool has_x = header.size() == 2 && header[0] == "x" && header[1] == "y";
    if (!has_x && !(header.size() == 1 && header[0] == "y"))
        throw ParseError("csv: header must be 'x,y' or 'y'", 0);

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("csv: expected " + std::to_string(header.size()) + " columns on line " +
                                 std::to_string(line_no),
                             line_no);
        if (has_x) xs.push_back(detail::parse_cell(cells[0], line_no));
        ys.push_back(detail::parse_cell(cells.back(), line_no));
    }
    if (ys.empty()) throw ParseError("csv: no data rows", line_no);

    if (has_x) {
        if (xs.size() < 2) throw ParseError("csv: need at least two rows to infer the step", line_no);
        const double inferred = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
        if (!(inferred > 0.0)) throw ParseError("csv: x column must be strictly increasing", line_no);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double gap = xs[i + 1] - xs[i];
            if (std::fabs(gap - inferred) > 1e-9 * std::fabs(inferred))
                throw ParseError("csv: non-uniform spacing between rows " + std::to_string(i + 2) + " and " +
                                     std::to_string(i + 3),
                                 i + 2);
        }
        return SampledSignal(xs.front(), inferred, std::move(ys));
    }
    if (!(step > 0.0)) throw ParameterError("csv: y-only input requires --origin and --step");
    return SampledSignal(origin, step, std::move(ys));
}

inline SampledSignal read_signal_csv_file(const std::string& path, double origin = 0.0, double step = 0.0) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return read_signal_csv(in, origin, step);
}

}  // namespace fracvel

#endif  // FRACVEL_SIGNAL_HPP
