#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <vector>

#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"

namespace thetarec {

// Critical orbit of x^2 + c in ball arithmetic: enclosures of
// x_0 = 0, x_1 = c, ..., x_steps, valid for every exact parameter inside
// the input ball.
std::vector<CertifiedReal> iterate_orbit(const CertifiedReal& c,
                                         std::size_t steps,
                                         mpfr_prec_t precision);

// Times 0 < k <= horizon with |x_k| < |x_j| for all 0 < j < k.  Every
// comparison against the running minimum is certified; an indeterminate one
// throws PrecisionExhausted naming the offending index.
std::vector<std::size_t> closest_returns(
    const std::vector<CertifiedReal>& orbit, std::size_t horizon);

// Certified bracket around the unique parameter of x^2 + c whose critical
// orbit realizes the angle's kneading data.
struct ParameterEnclosure {
  mpq_class lo;
  mpq_class hi;
  std::size_t depth = 0;      // kneading matched through q_depth
  mpfr_prec_t precision = 0;  // precision of the final orbit verification
  std::size_t probes = 0;     // bisection samples spent

  mpq_class width() const { return hi - lo; }
  mpq_class midpoint() const { return (lo + hi) / mpq_class(2); }
};

// Bisection over [-2, 0] under the signed kneading order.  The returned
// bracket has width <= target_width, interior samples whose certified sign
// prefix of length q_depth equals the angle's kneading sequence, and a
// midpoint orbit that passes verify_recurrence at the given depth.
ParameterEnclosure find_c(const ContinuedFraction& cf, std::size_t depth,
                          const mpq_class& target_width,
                          mpfr_prec_t start_precision = 128,
                          mpfr_prec_t max_precision = 8192);

// Return magnitudes and ratios at one level n: d[i-1] encloses
// d_n^i = |x_{i q_n}| for 0 < i <= a_{n+1}; delta[i-1] divides d_n^i by its
// successor in the interleaving chain (d_n^{i+1}, or d_{n-1}^1 for the last
// one); lambda = d_n^1 / d_{n-1}^1; deriv is the chain-rule derivative of
// the (q_n - 1)-step iterate at x_1.
struct ScalingLevel {
  std::size_t n = 0;
  long a_next = 0;  // a_{n+1}
  std::vector<CertifiedReal> d;
  std::vector<CertifiedReal> delta;
  CertifiedReal lambda;
  CertifiedReal deriv;
};

struct ScalingData {
  std::size_t n_max = 0;
  mpfr_prec_t precision = 0;         // precision that certified the chain
  CertifiedReal d1;                  // d_1^1 = |x_{q_1}| = |x_1|
  // Levels n = 2..n_max (levels[n-2] holds level n): ratios need the
  // coarser magnitude d_{n-1}^1, so the first level with data is n = 2.
  std::vector<ScalingLevel> levels;
  std::vector<CertifiedReal> alpha;  // alpha[n-1] = delta_{n+1}^{a_{n+2}}, n >= 1
};

// Extracts the scaling data of the orbit over the whole parameter bracket,
// escalating precision until the interleaving chain
// ... < d_{n+1}^{a_{n+2}} < d_n^1 < ... < d_n^{a_{n+1}} < d_{n-1}^1 < ...
// is certified through n_max.  Throws PrecisionExhausted at the cap with
// the deepest certified level in the message.
ScalingData scaling_data(const ParameterEnclosure& c,
                         const ContinuedFraction& cf, std::size_t n_max,
                         mpfr_prec_t start_precision = 128,
                         mpfr_prec_t max_precision = 8192);

}  // namespace thetarec
