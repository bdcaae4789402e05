#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thetarec/certified_real.hpp"

namespace thetarec {

// Infinite continued fraction [a_1, a_2, ...] with positive integer partial
// quotients.  Holds a realized prefix plus an optional tail generator; the
// generator is pure, so quotients are materialized once and then shared.
class ContinuedFraction {
 public:
  // index >= 1 -> a_index; only consulted past the realized prefix.
  using Generator = std::function<long(std::size_t)>;

  explicit ContinuedFraction(std::vector<long> prefix);
  static ContinuedFraction constant_tail(std::vector<long> prefix, long value);
  static ContinuedFraction periodic_tail(std::vector<long> prefix,
                                         std::vector<long> period);
  static ContinuedFraction with_generator(std::vector<long> prefix,
                                          Generator gen);

  // a_i, 1-based.  Realizes through the generator on demand; throws
  // std::out_of_range past a generator-free prefix.
  long quotient(std::size_t i) const;
  bool can_realize(std::size_t i) const;
  std::size_t realized() const;
  bool has_tail() const;

  // True when a_i <= bound for all i <= horizon.
  bool bounded_by(long bound, std::size_t horizon) const;

  // Identity of the underlying quotient sequence (shared-state test; two
  // independently parsed copies of the same sequence do not compare equal).
  bool same_as(const ContinuedFraction& other) const {
    return state_ == other.state_;
  }

  // "1,1,1,3,2" optionally followed by ",(v)*" or ",(v1,v2,...)*" for a
  // constant or periodic tail; "(1)*" alone is the all-ones fraction.
  static ContinuedFraction parse(const std::string& text);
  std::string str(std::size_t max_terms = 16) const;

 private:
  struct State {
    std::vector<long> terms;
    Generator gen;           // empty when the fraction is a finite prefix
    std::string tail_label;  // "(1)*" etc. when built by parse
  };
  std::shared_ptr<State> state_;
};

// Convergent numerators and denominators p_n/q_n of a realized prefix.
// Arrays are absolute-indexed from 0 with p_0 = 0, q_0 = 1; the display
// convention starts at q_1 unless lists_q0 is set (denominator q_0 = 1 is a
// separate closest-return time exactly when a_1 > 1).
struct Convergents {
  std::vector<mpz_class> p;  // p[n] = p_n, n = 0..depth
  std::vector<mpz_class> q;  // q[n] = q_n, n = 0..depth
  bool lists_q0 = false;

  std::size_t depth() const { return q.size() - 1; }
  std::size_t first_listed() const { return lists_q0 ? 0 : 1; }
  std::vector<mpz_class> listed_q() const;
};

// Computes convergents to the given depth (realizes quotients as needed).
// want_q0 requests the q_0 convention; it takes effect only when a_1 > 1.
Convergents convergents(const ContinuedFraction& cf, std::size_t depth,
                        bool want_q0 = false);

// One step of the shift on quotient sequences: [a_1-1, a_2, ...] when
// a_1 > 1, else [a_2, a_3, ...].
ContinuedFraction sigma_shift(const ContinuedFraction& cf);

// Classification of an angle by its quotient sequence, all in exact integer
// arithmetic.  Record positions N_k are the indices whose quotient strictly
// exceeds every earlier one; the growth condition between consecutive
// realized records is gap > 2^((5+tau) * a_{N_{k+1}}).
struct AngleClass {
  bool admissible = false;        // a_1 = a_2 = a_3 = 1
  long max_quotient = 0;          // over the examined horizon
  bool bounded = false;           // max_quotient <= bound argument
  std::vector<std::size_t> record_positions;
  bool growth_condition_ok = false;
  std::vector<std::size_t> growth_violations;  // indices k with a bad gap
};

AngleClass classify_angle(const ContinuedFraction& cf, std::size_t horizon,
                          const mpq_class& tau, long bound);

// Value of the angle as a certified enclosure.  Realizes quotients until the
// truncation bound 1/(q_N q_{N+1}) drops below 2^-precision_bits (or the
// prefix runs out, in which case the returned radius is what was achievable).
CertifiedReal angle_value(const ContinuedFraction& cf,
                          mpfr_prec_t precision_bits);

}  // namespace thetarec
