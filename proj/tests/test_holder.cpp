#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracvel/holder.hpp"
#include "helpers.hpp"

using namespace fracvel;
using Catch::Approx;

TEST_CASE("oscillation-fit exponent at analytic points") {
    // osc of |x|^0.3 over [0, eps] is exactly eps^0.3
    const HolderEstimate cusp = estimate_holder(Evaluable{make_cusp(0.3, 0.0)}, 0.0, Direction::Plus);
    CHECK(cusp.alpha_hat > 0.28);
    CHECK(cusp.alpha_hat < 0.32);
    CHECK(cusp.r_squared >= 0.999);

    const HolderEstimate affine = estimate_holder(Evaluable{Expr::var()}, 1.0, Direction::Plus);
    CHECK(affine.alpha_hat > 0.99);
    CHECK(affine.alpha_hat < 1.01);

    const HolderEstimate root = estimate_holder(Evaluable{Expr::sqrt(Expr::var())}, 0.0, Direction::Plus);
    CHECK(root.alpha_hat > 0.49);
    CHECK(root.alpha_hat < 0.51);
}

TEST_CASE("flat signals cannot be fitted") {
    CHECK_THROWS_AS(estimate_holder(Evaluable{Expr::constant(Scalar{2.0})}, 0.0, Direction::Plus),
                    FlatSignalError);
}

TEST_CASE("fitted constant bounds the oscillation from above") {
    const std::vector<Evaluable> corpus = {
        Evaluable{make_cusp(0.3, 0.0)},
        Evaluable{make_cusp(0.7, 0.0)},
        Evaluable{Expr::sqrt(Expr::var())},
        Evaluable{Expr::add(Expr::var(), Expr::sin(Expr::var()))},
    };
    const EpsLadder ladder;
    for (const auto& f : corpus) {
        const HolderEstimate est = estimate_holder(f, 0.0, Direction::Plus, ladder);
        for (double eps : ladder.values()) {
            const double osc = oscillation(f, 0.0, eps);
            // upper bound with 0.2 slack in log space
            CHECK(osc <= std::exp(est.intercept + 0.2) * std::pow(eps, est.alpha_hat));
        }
    }
}

TEST_CASE("monotone windows: oscillation fit equals increment fit exactly") {
    const Evaluable f{Expr::add(Expr::var(), Expr::mul(Expr::var(), Expr::mul(Expr::var(), Expr::var())))};
    const double x = 0.3;
    const EpsLadder ladder;

    const HolderEstimate via_osc = estimate_holder(f, x, Direction::Plus, ladder);

    std::vector<double> xs, ys;
    for (double eps : ladder.values()) {
        xs.push_back(std::log(eps));
        ys.push_back(std::log(abs(delta_plus(f, x, eps))));
    }
    const LinearFit via_delta = fit_line(xs, ys);
    CHECK(via_osc.alpha_hat == via_delta.slope);  // same evaluations, bit for bit
    CHECK(via_osc.intercept == via_delta.intercept);
}

TEST_CASE("two-sided cusps agree across directions") {
    for (double alpha : {0.3, 0.5, 0.8}) {
        const Evaluable f{make_cusp(alpha, 0.25)};
        const HolderEstimate plus = estimate_holder(f, 0.25, Direction::Plus);
        const HolderEstimate minus = estimate_holder(f, 0.25, Direction::Minus);
        CHECK(std::abs(plus.alpha_hat - minus.alpha_hat) <= 0.02);
        CHECK(plus.alpha_hat == Approx(alpha).margin(0.02));
    }
}

TEST_CASE("velocity trichotomy cross-check") {
    CHECK(cross_check_trichotomy(Evaluable{make_cusp(0.5, 0.0)}, 0.0, 0.5, Direction::Plus));
    // affine: the divergent leg is clamped away
    CHECK(cross_check_trichotomy(Evaluable{Expr::var()}, 1.0, 1.0, Direction::Plus));
    // wrong exponent guess fails on the lower leg
    CHECK_FALSE(cross_check_trichotomy(Evaluable{make_cusp(0.3, 0.0)}, 0.0, 0.7, Direction::Plus));
    CHECK_THROWS_AS(cross_check_trichotomy(Evaluable{Expr::var()}, 0.0, 1.2, Direction::Plus), ParameterError);
}

TEST_CASE("scan isolates the cusp of |x - 0.5|^0.4") {
    const auto rows = scan(Evaluable{make_cusp(0.4, 0.5)}, 0.0, 1.0, 101);
    REQUIRE(rows.size() == 101);

    int singular = 0;
    const ScanRow* center = nullptr;
    for (const auto& row : rows) {
        if (row.label == RowLabel::Singular) ++singular;
        if (std::abs(row.x - 0.5) < 1e-12) center = &row;
    }
    REQUIRE(center != nullptr);
    CHECK(center->label == RowLabel::Singular);
    CHECK(center->alpha_plus->alpha_hat == Approx(0.4).margin(0.02));
    CHECK(center->alpha_minus->alpha_hat == Approx(0.4).margin(0.02));
    CHECK(singular == 1);

    int smooth = 0;
    for (const auto& row : rows)
        if (row.label == RowLabel::Smooth) ++smooth;
    CHECK(smooth >= 95);  // the remaining rows are C^1 points
}

TEST_CASE("smooth functions produce no singular rows") {
    const auto rows = scan(Evaluable{Expr::mul(Expr::var(), Expr::var())}, 0.1, 1.0, 31);
    for (const auto& row : rows) CHECK(row.label != RowLabel::Singular);
}

TEST_CASE("weierstrass estimates land near the analytic exponent") {
    const Evaluable w{Expr::weierstrass(0.5, 3.0, kDefaultWeierstrassTerms)};
    for (double x : {0.1, 0.37, 0.62}) {
        const HolderEstimate est = estimate_holder(w, x, Direction::Plus);
        INFO("x = " << x << ", alpha_hat = " << est.alpha_hat);
        CHECK(est.alpha_hat > 0.4);
        CHECK(est.alpha_hat < 0.9);
        CHECK(est.r_squared > 0.9);
    }
}

TEST_CASE("scan output is byte-stable") {
    const Evaluable f{make_cusp(0.4, 0.5)};
    const std::string a = scan_to_csv(scan(f, 0.0, 1.0, 21));
    const std::string b = scan_to_csv(scan(f, 0.0, 1.0, 21));
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) == "x,alpha_plus,r2_plus,alpha_minus,r2_minus,label");
}

TEST_CASE("sampled scans go inconclusive when the grid cannot support the ladder") {
    // step so coarse that every rung snaps to the same multiple
    std::vector<double> vals(8);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<double>(i);
    const Evaluable f{SampledSignal{0.0, 0.005, std::move(vals)}};
    const auto rows = scan(f, 0.0, 0.035, 8);
    for (const auto& row : rows) CHECK(row.label == RowLabel::Inconclusive);
}

TEST_CASE("sampled scans estimate exponents on a fine grid") {
    // |x - 0.5|^0.4 sampled at 4e-4 spacing over [0, 1]
    std::vector<double> vals;
    const double step = 4e-4;
    for (int i = 0; i <= 2500; ++i) vals.push_back(std::pow(std::abs(step * i - 0.5), 0.4));
    const Evaluable f{SampledSignal{0.0, step, std::move(vals)}};

    const auto rows = scan(f, 0.1, 0.9, 5);  // includes x = 0.5
    const ScanRow* center = nullptr;
    for (const auto& row : rows)
        if (std::abs(row.x - 0.5) < 1e-12) center = &row;
    REQUIRE(center != nullptr);
    REQUIRE(center->alpha_plus.has_value());
    CHECK(center->alpha_plus->alpha_hat == Approx(0.4).margin(0.05));
    CHECK(center->label == RowLabel::Singular);
}
