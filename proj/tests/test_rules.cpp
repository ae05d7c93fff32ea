#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracvel/parse.hpp"
#include "fracvel/rules.hpp"
#include "helpers.hpp"

using namespace fracvel;
using Catch::Approx;

namespace {
const ExprPtr kSqrt = Expr::sqrt(Expr::var());
const Evaluable kSqrtX{kSqrt};

EpsLadder deep_ladder() { return EpsLadder{1e-2, 0.25, 16}; }
}  // namespace

TEST_CASE("finite-window product identity over a random corpus") {
    auto gen = testutil::rng(53);
    int cases = 0;
    while (cases < 500) {
        const Evaluable f{testutil::random_mixed(gen)};
        const Evaluable g{testutil::random_mixed(gen)};
        const double x = testutil::uniform(gen, -1.0, 1.0);
        const double eps = testutil::uniform(gen, 1e-5, 0.5);
        for (Direction dir : {Direction::Plus, Direction::Minus}) {
            const RuleReport r = check_product_lemma(f, g, x, eps, dir);
            INFO("f = " << to_string(f.expr()) << "\ng = " << to_string(g.expr()) << "\nx = " << x
                        << ", eps = " << eps << ", dir = " << to_string(dir) << ", residual = " << r.residual);
            CHECK(r.passed);
            ++cases;
        }
    }
}

TEST_CASE("finite-window product identity on fixed cases") {
    const Evaluable x2{parse("x * x")}, x3{parse("x * x * x")};
    CHECK(check_product_lemma(x2, x3, 1.7, 0.3, Direction::Plus).passed);
    CHECK(check_product_lemma(kSqrtX, Evaluable{parse("cbrt(x)")}, 0.5, 0.1, Direction::Minus).passed);

    // constant factor: both sides collapse to c * delta(g)
    const Evaluable c{parse("4.5")};
    const RuleReport r = check_product_lemma(c, x3, 0.8, 0.2, Direction::Plus);
    CHECK(r.passed);
    CHECK(std::get<Scalar>(r.lhs).re == Approx(4.5 * (std::pow(1.0, 3) - std::pow(0.8, 3))).epsilon(1e-12));
}

TEST_CASE("product rule with the directed correction term") {
    SECTION("quadratic variation correction at the sqrt origin") {
        const RuleReport fwd = check_product_rule(kSqrtX, kSqrtX, 0.0, 1.0, Direction::Plus);
        CHECK(fwd.passed);
        const auto& lhs = std::get<LimitEstimate>(fwd.lhs);
        CHECK(lhs.classification == Classification::Finite);
        CHECK(lhs.value->re == Approx(1.0).margin(1e-9));

        const RuleReport bwd = check_product_rule(kSqrtX, kSqrtX, 0.0, 1.0, Direction::Minus);
        CHECK(bwd.passed);
    }

    SECTION("complementary cusps, both directions") {
        const Evaluable f{make_cusp(0.4, 0.0)}, g{make_cusp(0.6, 0.0)};
        CHECK(check_product_rule(f, g, 0.0, 1.0, Direction::Plus).passed);
        CHECK(check_product_rule(f, g, 0.0, 1.0, Direction::Minus).passed);
    }

    SECTION("smooth pair reduces to Leibniz with vanishing correction") {
        const Evaluable f{parse("x * x")}, g{parse("x * x * x")};
        const RuleReport r = check_product_rule(f, g, 1.3, 1.0, Direction::Plus);
        CHECK(r.passed);
        const CovarEstimate corr = covariation(f, g, 1.3, 1.0, Direction::Plus);
        CHECK(corr.classification == Classification::Zero);
    }
}

TEST_CASE("flipping the correction sign breaks the rule") {
    // correction term is Finite 1 here, so the wrong sign shifts one side by 2
    const RuleReport flipped = check_product_rule_with_sign(kSqrtX, kSqrtX, 0.0, 1.0, Direction::Plus, -1.0);
    CHECK_FALSE(flipped.passed);
    CHECK(flipped.residual > 1.0);

    const RuleReport flipped_bwd = check_product_rule_with_sign(kSqrtX, kSqrtX, 0.0, 1.0, Direction::Minus, +1.0);
    CHECK_FALSE(flipped_bwd.passed);

    const Evaluable f{make_cusp(0.4, 0.0)}, g{make_cusp(0.6, 0.0)};
    CHECK_FALSE(check_product_rule_with_sign(f, g, 0.0, 1.0, Direction::Plus, -1.0).passed);
    CHECK_FALSE(check_product_rule_with_sign(f, g, 0.0, 1.0, Direction::Minus, +1.0).passed);
}

TEST_CASE("square rule") {
    const RuleReport at_origin = check_square_rule(kSqrtX, 0.0, 1.0, Direction::Plus);
    CHECK(at_origin.passed);
    CHECK(std::get<LimitEstimate>(at_origin.lhs).value->re == Approx(1.0).margin(1e-9));

    // (x)^2 at x=2: v(x^2) = 4 = 2 * 1 * 2 + 0
    const Evaluable ident{Expr::var()};
    const RuleReport smooth = check_square_rule(ident, 2.0, 1.0, Direction::Plus);
    CHECK(smooth.passed);
    CHECK(std::get<LimitEstimate>(smooth.lhs).value->re == Approx(4.0).epsilon(1e-6));

    const Evaluable half_cusp{make_cusp(0.5, 0.0)};
    CHECK(check_square_rule(half_cusp, 0.0, 1.0, Direction::Minus).passed);
}

TEST_CASE("quotient rule") {
    RuleTolerances loose;
    loose.value_rel = 1e-5;

    SECTION("sqrt over 1+x at the origin") {
        const Evaluable g{parse("1 + x")};
        const RuleReport r = check_quotient_rule(kSqrtX, g, 0.0, 0.5, Direction::Plus);
        CHECK(r.passed);
        const auto& lhs = std::get<LimitEstimate>(r.lhs);
        CHECK(lhs.classification == Classification::Finite);
        CHECK(lhs.value->re == Approx(1.0).epsilon(1e-5));
    }

    SECTION("smooth quotient lands on the Leibniz value") {
        const Evaluable f{parse("x * x")}, g{parse("x * x * x + 1")};
        const RuleReport r = check_quotient_rule(f, g, 1.0, 1.0, Direction::Plus, {}, loose);
        CHECK(r.passed);
        CHECK(std::get<LimitEstimate>(r.lhs).value->re == Approx(0.25).epsilon(1e-5));
        CHECK(std::get<LimitEstimate>(r.rhs).value->re == Approx(0.25).epsilon(1e-5));
    }

    SECTION("constant divisor scales the velocity") {
        const Evaluable g{parse("2")};
        const RuleReport r = check_quotient_rule(kSqrtX, g, 0.0, 0.5, Direction::Plus, {}, loose);
        CHECK(r.passed);
        CHECK(std::get<LimitEstimate>(r.lhs).value->re == Approx(0.5).epsilon(1e-9));
    }

    SECTION("divisor too close to zero") {
        const Evaluable g{parse("x")};
        CHECK_THROWS_AS(check_quotient_rule(kSqrtX, g, 0.0, 0.5, Direction::Plus), DomainError);
    }

    SECTION("backward direction uses the opposite correction sign") {
        const Evaluable f{make_cusp(1.0, 0.0)};  // |x|
        const Evaluable g{parse("1 + x")};
        const RuleReport r = check_quotient_rule(f, g, 0.0, 1.0, Direction::Minus);
        CHECK(r.passed);
        CHECK(std::get<LimitEstimate>(r.lhs).value->re == Approx(-1.0).epsilon(1e-5));
        CHECK(std::get<LimitEstimate>(r.rhs).value->re == Approx(-1.0).epsilon(1e-5));
    }
}

TEST_CASE("reciprocal identities") {
    const Evaluable g{parse("1 + sqrt(x)")};
    RuleTolerances tol;
    tol.value_rel = 1e-5;

    // a deep ladder keeps the deepest-sample error below the value tolerance
    const RuleReport half = reciprocal_identities(kSqrtX, g, 0.0, 0.5, Direction::Plus, deep_ladder(), tol);
    CHECK(half.passed);

    const RuleReport one = reciprocal_identities(kSqrtX, g, 0.0, 1.0, Direction::Plus, deep_ladder(), tol);
    CHECK(one.passed);
    const auto& lhs = std::get<LimitEstimate>(one.lhs);  // [f, 1/g] at order 1
    CHECK(lhs.classification == Classification::Finite);
    CHECK(lhs.value->re == Approx(-1.0).epsilon(1e-3));

    // direct check of the velocity half: v(1/g)(0) = -v(g)/g(0)^2 = -1 at order 1/2
    const LimitEstimate vel_inv = velocity(reciprocal(g), 0.0, 0.5, Direction::Plus, deep_ladder());
    CHECK(vel_inv.classification == Classification::Finite);
    CHECK(vel_inv.value->re == Approx(-1.0).epsilon(1e-4));

    // constant divisor: both sides vanish identically
    const Evaluable c{parse("3")};
    const RuleReport trivial = reciprocal_identities(kSqrtX, c, 0.5, 1.0, Direction::Plus);
    CHECK(trivial.passed);
    CHECK(std::get<LimitEstimate>(trivial.lhs).classification == Classification::Zero);

    // backward direction at a smooth point
    RuleTolerances bwd_tol;
    bwd_tol.value_rel = 1e-4;
    const RuleReport bwd = reciprocal_identities(kSqrtX, g, 0.25, 1.0, Direction::Minus, EpsLadder{}, bwd_tol);
    CHECK(bwd.passed);
    const LimitEstimate vel_bwd = velocity(reciprocal(g), 0.25, 1.0, Direction::Minus);
    CHECK(vel_bwd.classification == Classification::Finite);
    // (1/g)' = -g'/g^2 with g = 1 + sqrt(x): -1 / (1.5^2) at x = 0.25
    CHECK(vel_bwd.value->re == Approx(-1.0 / 2.25).epsilon(1e-4));
}

TEST_CASE("Leibniz recovery for differentiable pairs") {
    SECTION("sin times cos") {
        const RuleReport r = leibniz_limit_check(parse("sin(x)"), parse("cos(x)"), 0.3);
        CHECK(r.passed);
        // (sin cos)' = cos^2 - sin^2 = cos(2x)
        CHECK(std::get<Scalar>(r.rhs).re == Approx(std::cos(0.6)).epsilon(1e-12));
    }
    SECTION("x times x") {
        const RuleReport r = leibniz_limit_check(Expr::var(), Expr::var(), 5.0);
        CHECK(r.passed);
        CHECK(std::get<Scalar>(r.rhs).re == Approx(10.0).epsilon(1e-12));
    }
    SECTION("x^2 times x^3") {
        const ExprPtr f = parse("x * x");
        const ExprPtr g = parse("x * x * x");
        const RuleReport r = leibniz_limit_check(f, g, 1.0);
        CHECK(r.passed);
        CHECK(std::get<Scalar>(r.rhs).re == Approx(5.0).epsilon(1e-12));
        CHECK(covariation(Evaluable{f}, Evaluable{g}, 1.0, 1.0, Direction::Plus).classification ==
              Classification::Zero);
        CHECK(covariation(Evaluable{f}, Evaluable{g}, 1.0, 1.0, Direction::Minus).classification ==
              Classification::Zero);
    }
    SECTION("non-differentiable input is rejected") {
        CHECK_THROWS_AS(leibniz_limit_check(Expr::weierstrass(0.5, 3.0, 5), Expr::var(), 0.1),
                        NotDifferentiableError);
    }
}

TEST_CASE("combined differentiable product form") {
    const LimitEstimate sqrt_pair = combined_c1_product(kSqrt, kSqrt, 0.0, 1.0, Direction::Plus);
    CHECK(sqrt_pair.classification == Classification::Finite);
    CHECK(sqrt_pair.value->re == Approx(1.0).margin(1e-9));

    const LimitEstimate linear = combined_c1_product(Expr::var(), Expr::var(), 1.0, 1.0, Direction::Plus);
    CHECK(linear.classification == Classification::Finite);
    CHECK(linear.value->re == Approx(2.0).epsilon(1e-6));

    // f g = x, whose order-1/2 variation at 0 vanishes like sqrt(eps)
    const LimitEstimate vanishing = combined_c1_product(kSqrt, kSqrt, 0.0, 0.5, Direction::Plus);
    CHECK(vanishing.classification == Classification::Zero);

    // backward at the origin runs through complex derivatives and lands on
    // the backward velocity of x, which is 1
    const LimitEstimate backward = combined_c1_product(kSqrt, kSqrt, 0.0, 1.0, Direction::Minus);
    CHECK(backward.classification == Classification::Finite);
    CHECK(backward.value->re == Approx(1.0).margin(1e-9));
    CHECK(std::abs(backward.value->im) < 1e-9);

    // agreement with the ladder velocity of the structural product
    struct Case {
        ExprPtr f, g;
        double x;
    };
    const ExprPtr x = Expr::var();
    const std::vector<Case> corpus = {
        {Expr::sin(x), Expr::cos(x), 0.4},
        {Expr::mul(x, x), Expr::add(x, Expr::constant(Scalar{2.0})), 0.6},
        {Expr::add(x, Expr::mul(x, x)), Expr::sin(x), 1.1},
    };
    for (const auto& c : corpus) {
        for (Direction dir : {Direction::Plus, Direction::Minus}) {
            const LimitEstimate combined = combined_c1_product(c.f, c.g, c.x, 1.0, dir);
            const LimitEstimate direct = velocity(product(Evaluable{c.f}, Evaluable{c.g}), c.x, 1.0, dir);
            CHECK(combined.classification == direct.classification);
            if (combined.classification == Classification::Finite)
                CHECK(abs(*combined.value - *direct.value) <=
                      1e-5 * std::max(abs(*combined.value), abs(*direct.value)));
        }
    }
}

TEST_CASE("structural product refuses mixed representations") {
    const SampledSignal s{0.0, 0.1, {1, 2, 3}};
    CHECK_THROWS_AS(product(kSqrtX, Evaluable{s}), ParameterError);
    CHECK_NOTHROW(product(Evaluable{s}, Evaluable{s}));
    CHECK(product(Evaluable{s}, Evaluable{s}).signal().values() == std::vector<double>{1, 4, 9});
}
