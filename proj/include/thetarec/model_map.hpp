#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "thetarec/cf.hpp"

namespace thetarec {

// Seed points for the inductive orbit construction.  Any triple with
// -1 < x1 < 0 < x3 < x2 < -x1 works; the defaults keep denominators small.
struct ModelSeeds {
  mpq_class x1{-1, 2};
  mpq_class x2{1, 4};
  mpq_class x3{1, 8};
};

// A piecewise-linear unimodal map with an exact rational critical orbit
// realizing the combinatorics of the angle: decreasing left of 0, increasing
// right of 0, f(x_k) = x_{k+1}, f(-1) = f(1) = 1.
struct ModelMap {
  ContinuedFraction cf;
  std::size_t depth = 0;                 // orbit realized through x_{q_depth + 1}
  std::vector<mpq_class> orbit;          // x_0 .. x_{q_depth + 1}
  std::vector<std::pair<mpq_class, mpq_class>> breakpoints;  // sorted (x, f(x))
  // Longest interval placed during stage n (first = n); each must be < 1/2^n.
  std::vector<std::pair<std::size_t, mpq_class>> stage_max_length;

  // Piecewise-linear interpolation through the breakpoints; x in [-1, 1].
  mpq_class eval(const mpq_class& x) const;
};

ModelMap construct_model(const ContinuedFraction& cf, std::size_t depth,
                         const ModelSeeds& seeds = ModelSeeds{});

// Exact check that the breakpoint images decrease strictly left of 0 and
// increase strictly right of 0.
bool monotone_on_breakpoints(const ModelMap& model);

}  // namespace thetarec
