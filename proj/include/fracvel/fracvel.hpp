#ifndef FRACVEL_FRACVEL_HPP
#define FRACVEL_FRACVEL_HPP

// Umbrella header: fractional variation, velocity, co-variation, the
// product-rule family and oscillation-based Holder exponent estimation.

#include "fracvel/covariation.hpp"
#include "fracvel/errors.hpp"
#include "fracvel/evaluable.hpp"
#include "fracvel/expr.hpp"
#include "fracvel/format.hpp"
#include "fracvel/holder.hpp"
#include "fracvel/ladder.hpp"
#include "fracvel/limitfit.hpp"
#include "fracvel/parse.hpp"
#include "fracvel/rules.hpp"
#include "fracvel/scalar.hpp"
#include "fracvel/signal.hpp"
#include "fracvel/velocity.hpp"

#endif  // FRACVEL_FRACVEL_HPP
