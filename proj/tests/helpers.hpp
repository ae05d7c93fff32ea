#ifndef FRACVEL_TESTS_HELPERS_HPP
#define FRACVEL_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "fracvel/expr.hpp"

namespace testutil {

inline std::mt19937 rng(unsigned seed) { return std::mt19937{seed}; }

inline double uniform(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline int pick(std::mt19937& gen, int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }

/// Random polynomial sum_{k<=deg} c_k x^k with |c_k| <= bound, degree <= 3.
inline fracvel::ExprPtr random_poly(std::mt19937& gen, double bound = 2.0) {
    using fracvel::Expr;
    const int deg = 1 + pick(gen, 3);
    fracvel::ExprPtr acc = Expr::constant(fracvel::Scalar{uniform(gen, -bound, bound)});
    fracvel::ExprPtr xpow = Expr::var();
    for (int k = 1; k <= deg; ++k) {
        acc = Expr::add(acc, Expr::mul(Expr::constant(fracvel::Scalar{uniform(gen, -bound, bound)}), xpow));
        xpow = Expr::mul(xpow, Expr::var());
    }
    return acc;
}

/// Random a*sin(x) + b*cos(x).
inline fracvel::ExprPtr random_trig(std::mt19937& gen, double bound = 2.0) {
    using fracvel::Expr;
    return Expr::add(Expr::mul(Expr::constant(fracvel::Scalar{uniform(gen, -bound, bound)}), Expr::sin(Expr::var())),
                     Expr::mul(Expr::constant(fracvel::Scalar{uniform(gen, -bound, bound)}), Expr::cos(Expr::var())));
}

/// Mixed corpus draw: polynomial, trig, cusp, or a sum of two of those.
inline fracvel::ExprPtr random_mixed(std::mt19937& gen) {
    using fracvel::Expr;
    switch (pick(gen, 4)) {
        case 0: return random_poly(gen);
        case 1: return random_trig(gen);
        case 2: return fracvel::make_cusp(uniform(gen, 0.2, 1.0), uniform(gen, -0.5, 0.5));
        default: return Expr::add(random_poly(gen, 1.0), random_trig(gen, 1.0));
    }
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace testutil

#endif  // FRACVEL_TESTS_HELPERS_HPP
