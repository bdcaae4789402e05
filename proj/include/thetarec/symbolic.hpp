#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"
#include "thetarec/ostrowski.hpp"

namespace thetarec {

// Signs of the critical orbit x_1, x_2, ...; bit i is 1 iff x_i > 0 (the
// orbit never hits zero, so every bit is defined).
struct SignSequence {
  std::vector<int> bits;  // bits[i-1] for x_i

  std::size_t length() const { return bits.size(); }
  int bit(std::size_t i) const { return bits.at(i - 1); }  // 1-based
  std::string str() const;
};

// Sign of x_{q_n}: negative exactly when n = 0,1 mod 4.
int sign_of_qn(std::size_t n);

// Sign of x_k, k >= 1, from the digit expansion: the lowest nonzero digit
// gamma_m q_m dominates; its sign is sign_of_qn(m), flipped when
// gamma_m > 1.  Requires a_1 = a_2 = a_3 = 1.
int sign_of(const mpz_class& k, const ContinuedFraction& cf);
int sign_of(const OstrowskiWord& w);

// Exact number of 0 < k < m with x_k < 0, and its parity.
mpz_class neg_count(const mpz_class& m, const ContinuedFraction& cf);
bool neg_parity_even(const mpz_class& m, const ContinuedFraction& cf);

SignSequence kneading_sequence(const ContinuedFraction& cf,
                               std::size_t length);

// Signed lexicographic order on kneading data: at the first differing index
// the comparison flips with the parity of negative entries before it.
// Returns -1/0/+1; 0 means one is a prefix of the other (no difference).
int compare_kneading(const SignSequence& a, const SignSequence& b);

// True when some period p <= max_period repeats over the second half of the
// realized prefix (a proxy for eventual periodicity).
bool has_periodic_tail(const SignSequence& s, std::size_t max_period);

// Total order of closure points by word address; -1/0/+1.  Words must be
// valid and share the same fraction object.
int compare_points(const OstrowskiWord& u, const OstrowskiWord& v);

// Order of |x_j| vs |x_k| (distance from the critical point), decided by
// comparing the f-images x_{j+1}, x_{k+1}.
int compare_abs(const mpz_class& j, const mpz_class& k,
                const ContinuedFraction& cf);

// Circle coordinate of a closure point: the exact finite sum of
// digit_n * theta_n, which lands in the fundamental domain [-theta, 1-theta).
CertifiedReal semiconjugacy_phi(const OstrowskiWord& w, mpfr_prec_t precision);

// One level of the nested interval families.  Endpoints are orbit indices;
// lo/hi are sorted by the point order, while `index` is the defining k (the
// orbit point x_k is always one of the two endpoints, except for k = 0
// where the interval is the hull of four late-orbit points).
struct SymbolicInterval {
  char family;  // 'I' or 'J'
  mpz_class index;
  mpz_class lo_index, hi_index;
};

struct IntervalHierarchy {
  std::size_t level;
  std::vector<SymbolicInterval> intervals;  // I_0..I_{q_{n-1}-1}, then J_k
};

IntervalHierarchy build_hierarchy(const ContinuedFraction& cf, std::size_t n);

// Certified verdict of the closest-recurrence conditions on an orbit
// enclosure x_0..x_{q_N+1} (values[i] must enclose x_i; the extra final
// point feeds the f-image comparisons).
enum class RecurrenceOutcome { pass, fail, indeterminate };

struct RecurrenceVerdict {
  RecurrenceOutcome outcome = RecurrenceOutcome::pass;
  std::size_t level = 0;  // continued-fraction length at the failure
  int clause = 0;         // 1: re-entry into I_x; 2: wrong recurrence times
  std::string detail;

  bool passed() const { return outcome == RecurrenceOutcome::pass; }
};

RecurrenceVerdict verify_recurrence(const std::vector<CertifiedReal>& values,
                                    const ContinuedFraction& cf,
                                    std::size_t N);

}  // namespace thetarec
