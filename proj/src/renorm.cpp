#include "thetarec/renorm.hpp"

#include <algorithm>
#include <stdexcept>

#include "thetarec/certified_real.hpp"

namespace thetarec {

namespace {

// q_{b+1} in terms of the leading quotients: q_1 = a_1 when b = 0, and
// q_2 = a_2 q_1 + q_0 = a_2 + 1 when b = 1 (where a_1 = 1).
long first_return_after_base(const ContinuedFraction& theta, int b) {
  return b == 0 ? theta.quotient(1) : theta.quotient(2) + 1;
}

}  // namespace

RenormState make_state(const ContinuedFraction& theta, int s) {
  if (s != 1 && s != -1)
    throw std::invalid_argument("make_state: sign must be +1 or -1");
  RenormState st{theta, s, Side::right, 1};
  st.b = theta.quotient(1) > 1 ? 0 : 1;
  st.j_side =
      first_return_after_base(theta, st.b) == 2 ? Side::left : Side::right;
  return st;
}

RenormState renorm_step(const RenormState& state) {
  const long qb1 = first_return_after_base(state.theta, state.b);
  const int s_next = qb1 == 2 ? -state.s : state.s;
  return make_state(sigma_shift(state.theta), s_next);
}

std::vector<mpz_class> return_times(const RenormState& state,
                                    std::size_t count) {
  if (count == 0) return {};
  const std::size_t base = static_cast<std::size_t>(state.b);
  const Convergents cv = convergents(state.theta, base + count - 1);
  return std::vector<mpz_class>(cv.q.begin() + base,
                                cv.q.begin() + base + count);
}

std::string BinaryWord::str() const {
  std::string out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BinaryWord BinaryWord::parse(const std::string& text) {
  BinaryWord w;
  w.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BinaryWord::parse: symbols must be 0 or 1");
    w.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

int BinaryWord::isolated_symbol() const {
  bool has[2] = {false, false};
  bool doubled[2] = {false, false};
  for (std::size_t i = 0; i < bits.size(); ++i) {
    has[bits[i]] = true;
    if (i + 1 < bits.size() && bits[i + 1] == bits[i]) doubled[bits[i]] = true;
  }
  if (!has[0] || !has[1])
    throw std::invalid_argument(
        "isolated_symbol: constant word has no isolated symbol");
  if (doubled[0] && doubled[1])
    throw std::invalid_argument(
        "isolated_symbol: both symbols repeat; not a rotation sequence");
  if (doubled[0]) return 1;
  if (doubled[1]) return 0;
  // Alternating word: the sequence starts with the non-isolated symbol.
  return 1 - bits.front();
}

BinaryWord recode_word(const BinaryWord& w) {
  const int iso = w.isolated_symbol();
  if (w.bits.front() == iso)
    throw std::invalid_argument(
        "recode_word: word starts with the isolated symbol");
  BinaryWord out;
  out.bits.reserve(w.bits.size() / 2 + 1);
  std::size_t i = 0;
  while (i < w.bits.size()) {
    if (i + 1 >= w.bits.size()) break;  // could still open a pair: drop
    if (w.bits[i + 1] == iso) {
      out.bits.push_back(1);
      i += 2;
    } else {
      out.bits.push_back(0);
      i += 1;
    }
  }
  return out;
}

BinaryWord sturmian_word(const ContinuedFraction& theta, std::size_t length,
                         mpfr_prec_t precision) {
  BinaryWord w;
  if (length == 0) return w;

  // Bit n is 1 exactly when floor((n+2) theta) - floor((n+1) theta) = 1,
  // which restates membership of the (n+1)-st rotate in (-theta, 0] for
  // irrational theta.  Certify every floor from a ball of theta, doubling
  // the working precision while any floor straddles an integer.
  const mpfr_prec_t kPrecCap = mpfr_prec_t(1) << 22;
  std::vector<mpz_class> floors(length + 2);
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(precision, 64);
       prec <= kPrecCap; prec *= 2) {
    const CertifiedReal th = angle_value(theta, prec);
    bool decided = true;
    mpz_class flo, fhi;
    for (std::size_t m = 1; m <= length + 1 && decided; ++m) {
      const CertifiedReal t = th.mul_l(static_cast<long>(m));
      mpfr_get_z(flo.get_mpz_t(), t.lo(), MPFR_RNDD);
      mpfr_get_z(fhi.get_mpz_t(), t.hi(), MPFR_RNDD);
      if (flo == fhi)
        floors[m] = flo;
      else
        decided = false;
    }
    if (!decided) continue;
    w.bits.reserve(length);
    for (std::size_t n = 0; n < length; ++n)
      w.bits.push_back(
          static_cast<std::uint8_t>(floors[n + 2].get_ui() -
                                    floors[n + 1].get_ui()));
    return w;
  }
  throw std::runtime_error(
      "sturmian_word: precision escalation exhausted before every rotation "
      "bit was certified");
}

}  // namespace thetarec
