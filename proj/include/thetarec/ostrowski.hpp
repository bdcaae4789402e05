#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"

namespace thetarec {

// Positional numeration attached to the denominators q_n (integers) and the
// signed lengths theta_n = q_n*theta - p_n (reals).  Digits obey
//   0 <= gamma_n <= a_{n+1}   and   gamma_n = a_{n+1}  =>  gamma_{n-1} = 0,
// with the extra digit gamma_0 in [0, a_1 - 1] only when a_1 > 1.
enum class WordKind { integer_word, real_word };

struct OstrowskiWord {
  ContinuedFraction cf;
  std::vector<long> digits;  // digits[i] = gamma_{base + i}
  std::size_t base = 1;      // absolute position of digits[0]; 0 or 1
  WordKind kind = WordKind::integer_word;

  // Absolute position of the last stored digit; words always store >= 1
  // digit (the word for zero is a single 0).
  std::size_t top() const { return base + digits.size() - 1; }
  // gamma_n, zero outside the stored range.
  long digit_at(std::size_t n) const;
};

// Checks the digit constraints on the stored prefix.  A finite prefix can
// never pin down conditions on infinitely many digits, so nothing beyond the
// two local constraints is (or can be) enforced here.
bool valid_word(const OstrowskiWord& w);

// Greedy expansion of k >= 0 over the q_n.  The top position is the largest
// n with q_n <= k, which requires realizing quotients until some q exceeds
// k; a finite prefix that runs out first raises std::out_of_range.
OstrowskiWord encode_int(const mpz_class& k, const ContinuedFraction& cf);

// Exact sum of digit_n * q_n.
mpz_class decode_int(const OstrowskiWord& w);

// Word for decode_int(w) + 1 (carries handled by re-encoding).
OstrowskiWord increment(const OstrowskiWord& w);

// Numeration order: the largest differing position decides.  Returns
// -1, 0, +1.  Agrees with integer order of the decoded values.
int word_order(const OstrowskiWord& u, const OstrowskiWord& v);

// "[0,1,0,2]": stored digits in ascending position order.
std::string word_str(const OstrowskiWord& w);
OstrowskiWord parse_word(const std::string& text, const ContinuedFraction& cf,
                         WordKind kind = WordKind::integer_word,
                         std::size_t base = 1);

// Enclosures of theta_n = q_n*theta - p_n for n = 0..count, each with
// radius at most about 2^-abs_bits.
std::vector<CertifiedReal> theta_lengths(const ContinuedFraction& cf,
                                         std::size_t count,
                                         mpfr_prec_t abs_bits);

// Upper enclosure of the discarded mass sum_{n > depth} a_{n+1}|theta_n|,
// which telescopes to |theta_depth| + |theta_{depth+1}|.
CertifiedReal tail_bound(const ContinuedFraction& cf, std::size_t depth,
                         mpfr_prec_t precision);

struct RealCodecOptions {
  mpfr_prec_t start_precision = 192;
  mpfr_prec_t max_precision = 1 << 20;
  std::size_t guard_positions = 16;  // extra lookahead past the last digit
};

// Digit extraction for x in [-theta, 1-theta): positions are scanned in
// increasing n and each takes the largest digit for which the remainder
// certifiably stays representable by the later positions.  Internal
// precision escalates from start_precision; a digit that stays ambiguous at
// max_precision raises PrecisionExhausted (exact boundary points of the
// numeration cannot be certified at any finite precision), and a value
// certifiably outside the fundamental interval raises std::domain_error.
OstrowskiWord encode_real(const CertifiedReal& x, const ContinuedFraction& cf,
                          std::size_t depth,
                          const RealCodecOptions& opt = RealCodecOptions{});

// Enclosure of the finite sum digit_n * theta_n; the omitted tail is bounded
// by tail_bound(cf, w.top(), ...).
CertifiedReal decode_real(const OstrowskiWord& w, mpfr_prec_t precision);

}  // namespace thetarec
