#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fracvel/scalar.hpp"
#include "helpers.hpp"

using fracvel::Scalar;
using Catch::Approx;

TEST_CASE("principal-branch pow on the examples") {
    // sqrt of a negative real lands on the positive imaginary axis
    const Scalar a = fracvel::pow(Scalar{-0.04}, 0.5);
    CHECK(std::abs(a.re) < 1e-15);
    CHECK(a.im == Approx(0.2).margin(1e-15));

    const Scalar b = fracvel::pow(Scalar{4.0}, 0.5);
    CHECK(b.re == 2.0);
    CHECK(b.im == 0.0);

    // cube root of -1: exp(i pi / 3), frozen from an independent evaluation
    const Scalar c = fracvel::pow(Scalar{-1.0}, 1.0 / 3.0);
    const double expect_re = std::cos(std::numbers::pi / 3.0);
    const double expect_im = std::sin(std::numbers::pi / 3.0);
    CHECK(c.re == Approx(expect_re).epsilon(1e-12));
    CHECK(c.im == Approx(expect_im).epsilon(1e-12));
    CHECK(c.re == Approx(0.5).epsilon(1e-12));
    CHECK(c.im == Approx(0.8660254038).epsilon(1e-9));
}

TEST_CASE("abs is the Euclidean modulus") {
    CHECK(fracvel::abs(Scalar{0.0, -1.0}) == 1.0);
    CHECK(fracvel::abs(Scalar{3.0, 4.0}) == 5.0);
    CHECK(fracvel::abs(Scalar{0.0}) == 0.0);
}

TEST_CASE("pow domain errors") {
    CHECK_THROWS_AS(fracvel::pow(Scalar{0.0}, -1.0), fracvel::DomainError);
    CHECK_THROWS_AS(fracvel::pow(Scalar{1.0}, std::nan("")), fracvel::ParameterError);
    CHECK_NOTHROW(fracvel::pow(Scalar{0.0}, 0.5));
}

TEST_CASE("pow identities hold over random inputs") {
    auto gen = testutil::rng(1234);
    for (int i = 0; i < 200; ++i) {
        const Scalar z{testutil::uniform(gen, -3, 3), testutil::uniform(gen, -3, 3)};
        if (fracvel::abs(z) < 1e-6) continue;

        const Scalar z1 = fracvel::pow(z, 1.0);
        CHECK(fracvel::abs(z1 - z) <= 1e-15 * fracvel::abs(z));
        const Scalar z0 = fracvel::pow(z, 0.0);
        CHECK(z0.re == 1.0);
        CHECK(z0.im == 0.0);

        const double a = testutil::uniform(gen, 0.05, 1.0);
        const double mod_of_pow = fracvel::abs(fracvel::pow(z, a));
        const double pow_of_mod = fracvel::pow(Scalar{fracvel::abs(z)}, a).re;
        CHECK(mod_of_pow == Approx(pow_of_mod).epsilon(1e-12));

        const double x = testutil::uniform(gen, 0.01, 10.0);
        const Scalar roundtrip = fracvel::pow(fracvel::pow(Scalar{x}, a), 1.0 / a);
        CHECK(roundtrip.im == 0.0);
        CHECK(roundtrip.re == Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("closed real arithmetic never drifts into the complex plane") {
    auto gen = testutil::rng(99);
    for (int i = 0; i < 500; ++i) {
        const Scalar a{testutil::uniform(gen, -10, 10)};
        Scalar b{testutil::uniform(gen, -10, 10)};
        if (std::abs(b.re) < 1e-3) b = Scalar{1.5};

        CHECK((a + b).im == 0.0);
        CHECK((a - b).im == 0.0);
        CHECK((a * b).im == 0.0);
        CHECK((a / b).im == 0.0);
        CHECK(fracvel::pow(a, 3.0).im == 0.0);  // integer powers of negatives stay real

        // the real fast path is the plain double operation, bit for bit
        CHECK((a / b).re == a.re / b.re);
        CHECK((a * b).re == a.re * b.re);
    }
}

TEST_CASE("negative zero is canonicalized so Arg stays in (-pi, pi]") {
    const Scalar z{-2.0, -0.0};
    CHECK(z.im == 0.0);
    const Scalar r = fracvel::pow(z, 0.5);
    CHECK(r.im > 0.0);  // principal sqrt of a negative real is +i sqrt
}
