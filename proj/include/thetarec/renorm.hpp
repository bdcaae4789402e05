#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "thetarec/cf.hpp"

namespace thetarec {

enum class Side { left, right };

// Combinatorial state evolved by the symbolic renormalization operator: the
// angle, the orientation sign of the monotone branch relative to the nearest
// unimodal branch, the side of the monotone domain J relative to the central
// domain T, and the base index b of the first best-return time q_b = 1.
//
// Invariants: b = 0 exactly when a_1 > 1; J lies to the left of T exactly
// when q_{b+1} = 2.
struct RenormState {
  ContinuedFraction theta;
  int s = 1;  // +1 or -1
  Side j_side = Side::right;
  int b = 1;
};

// Builds the state of an angle with the given sign, deriving side and base
// from the leading quotients.
RenormState make_state(const ContinuedFraction& theta, int s);

// One application of the operator: the angle shifts by sigma, the sign is
// preserved when q_{b+1} > 2 and flipped when q_{b+1} = 2, and side/base are
// recomputed for the shifted angle.  Throws when the quotient prefix is
// exhausted.
RenormState renorm_step(const RenormState& state);

// The first `count` closest-return times q_b, q_{b+1}, ... of the state's
// angle (the leading value is always 1).
std::vector<mpz_class> return_times(const RenormState& state,
                                    std::size_t count);

// Finite prefix of a rotation sequence over {0,1}.  In a valid word exactly
// one symbol is isolated (never occurs twice in a row) and the word starts
// with the other symbol.
struct BinaryWord {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::string str() const;
  static BinaryWord parse(const std::string& text);

  // The symbol that never repeats.  A doubled occurrence of one symbol
  // forces the other to be the isolated one; an alternating word falls back
  // to the start-symbol rule.  Throws std::invalid_argument for constant
  // words and for words where both symbols repeat.
  int isolated_symbol() const;
};

// Rotation sequence s(theta): bit n is 1 exactly when the (n+1)-st rotate of
// theta by itself lands in (-theta, 0] on the circle.  Computed through
// certified floors of multiples of theta, escalating the working precision
// from `precision` until every floor in range is decided; throws
// std::runtime_error when escalation is exhausted (e.g. rational input).
BinaryWord sturmian_word(const ContinuedFraction& theta, std::size_t length,
                         mpfr_prec_t precision);

// Compression substitution realizing the quotient shift on rotation
// sequences: each isolated symbol merges with its preceding symbol into "1",
// every bare non-isolated symbol becomes "0", and a trailing symbol that
// could still open a pair is dropped.  The result is the rotation sequence
// of the shifted angle on the certified prefix.
BinaryWord recode_word(const BinaryWord& w);

}  // namespace thetarec
