#ifndef FRACVEL_JSON_IO_HPP
#define FRACVEL_JSON_IO_HPP

#include <json.hpp>

#include "fracvel/covariation.hpp"
#include "fracvel/holder.hpp"
#include "fracvel/limitfit.hpp"
#include "fracvel/rules.hpp"
#include "fracvel/scalar.hpp"

namespace fracvel {

// ordered_json keeps insertion order, so identical inputs serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

inline Json to_json(Scalar z) { return Json{{"re", z.re}, {"im", z.im}}; }

inline Json to_json(const LimitEstimate& est) {
    Json j;
    j["classification"] = to_string(est.classification);
    j["value"] = est.value ? to_json(*est.value) : Json(nullptr);
    j["slope"] = est.slope;
    j["intercept"] = est.intercept;
    j["r_squared"] = est.r_squared;
    Json samples = Json::array();
    for (const auto& s : est.samples)
        samples.push_back(Json{{"eps", s.eps}, {"re", s.value.re}, {"im", s.value.im}});
    j["samples"] = std::move(samples);
    return j;
}

inline Json to_json(const CovarEstimate& est) {
    Json j = to_json(static_cast<const LimitEstimate&>(est));
    j["beta"] = est.order_beta;
    return j;
}

inline Json to_json(const RuleSide& side) {
    if (std::holds_alternative<Scalar>(side)) return to_json(std::get<Scalar>(side));
    return to_json(std::get<LimitEstimate>(side));
}

inline Json to_json(const RuleReport& report) {
    Json j;
    j["rule"] = to_string(report.rule);
    j["passed"] = report.passed;
    j["residual"] = report.residual;
    j["tolerance"] = report.tolerance;
    j["lhs"] = to_json(report.lhs);
    j["rhs"] = to_json(report.rhs);
    return j;
}

inline Json to_json(const ScanRow& row) {
    Json j;
    j["x"] = row.x;
    j["alpha_plus"] = row.alpha_plus ? Json(row.alpha_plus->alpha_hat) : Json(nullptr);
    j["r2_plus"] = row.alpha_plus ? Json(row.alpha_plus->r_squared) : Json(nullptr);
    j["alpha_minus"] = row.alpha_minus ? Json(row.alpha_minus->alpha_hat) : Json(nullptr);
    j["r2_minus"] = row.alpha_minus ? Json(row.alpha_minus->r_squared) : Json(nullptr);
    j["label"] = to_string(row.label);
    return j;
}

}  // namespace fracvel

#endif  // FRACVEL_JSON_IO_HPP
