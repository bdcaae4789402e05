#include "thetarec/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace thetarec {

namespace {

void require_admissible(const ContinuedFraction& cf) {
  if (cf.quotient(1) != 1 || cf.quotient(2) != 1 || cf.quotient(3) != 1)
    throw std::invalid_argument(
        "sign rules need an angle with a_1 = a_2 = a_3 = 1");
}

// Exact counts Neg(q_n) for n = 1..depth via the block recursion
// Neg(q_n) = a_n Neg(q_{n-1}) + delta_n + Neg(q_{n-2}).
std::vector<mpz_class> neg_at_qn(const ContinuedFraction& cf,
                                 std::size_t depth) {
  std::vector<mpz_class> neg(depth + 1, 0);
  if (depth >= 2) neg[2] = 1;
  for (std::size_t n = 3; n <= depth; ++n) {
    const long a = cf.quotient(n);
    const long delta = sign_of_qn(n - 1) < 0 ? 1 : a - 1;
    neg[n] = a * neg[n - 1] + delta + neg[n - 2];
  }
  return neg;
}

}  // namespace

std::string SignSequence::str() const {
  std::string out;
  out.reserve(bits.size());
  for (int b : bits) out.push_back(b ? '1' : '0');
  return out;
}

int sign_of_qn(std::size_t n) {
  const std::size_t r = n % 4;
  return (r == 0 || r == 1) ? -1 : 1;
}

int sign_of(const OstrowskiWord& w) {
  require_admissible(w.cf);
  for (std::size_t i = 0; i < w.digits.size(); ++i) {
    if (w.digits[i] == 0) continue;
    const int s = sign_of_qn(w.base + i);
    return w.digits[i] > 1 ? -s : s;
  }
  throw std::invalid_argument("the critical point has no sign");
}

int sign_of(const mpz_class& k, const ContinuedFraction& cf) {
  if (k <= 0) throw std::invalid_argument("sign is defined for k >= 1");
  return sign_of(encode_int(k, cf));
}

mpz_class neg_count(const mpz_class& m, const ContinuedFraction& cf) {
  require_admissible(cf);
  if (m <= 1) return 0;
  const OstrowskiWord w = encode_int(m, cf);
  const Convergents c = convergents(cf, w.top());
  const std::vector<mpz_class> neg_q = neg_at_qn(cf, w.top());
  mpz_class count = 0;
  mpz_class rest = m;
  for (std::size_t n = w.top() + 1; n-- > 1;) {
    const long g = w.digit_at(n);
    if (g == 0) continue;
    rest -= g * c.q[n];
    // g full blocks of length q_n, the block-boundary points cq_n, and the
    // partial block of length `rest` all reduce to lower-index counts.
    count += g * neg_q[n];
    const long boundaries = g - 1 + (rest > 0 ? 1 : 0);
    if (boundaries >= 1) {
      const int s = sign_of_qn(n);
      count += (s < 0 ? 1 : 0);           // x_{q_n}
      if (boundaries >= 2 && s > 0)       // x_{c q_n}, c >= 2, sign -s
        count += boundaries - 1;
    }
  }
  return count;
}

bool neg_parity_even(const mpz_class& m, const ContinuedFraction& cf) {
  return mpz_even_p(neg_count(m, cf).get_mpz_t()) != 0;
}

SignSequence kneading_sequence(const ContinuedFraction& cf,
                               std::size_t length) {
  require_admissible(cf);
  SignSequence s;
  s.bits.reserve(length);
  for (std::size_t i = 1; i <= length; ++i)
    s.bits.push_back(sign_of(mpz_class(static_cast<unsigned long>(i)), cf) > 0
                         ? 1
                         : 0);
  return s;
}

int compare_kneading(const SignSequence& a, const SignSequence& b) {
  const std::size_t len = std::min(a.length(), b.length());
  std::size_t negatives = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (a.bits[i] != b.bits[i]) {
      const int bigger_bit = negatives % 2 == 0 ? 1 : 0;
      return a.bits[i] == bigger_bit ? 1 : -1;
    }
    if (a.bits[i] == 0) ++negatives;
  }
  return 0;
}

bool has_periodic_tail(const SignSequence& s, std::size_t max_period) {
  const std::size_t len = s.length();
  const std::size_t start = len / 2;
  for (std::size_t p = 1; p <= max_period && start + p < len; ++p) {
    bool periodic = true;
    for (std::size_t i = start; i + p < len; ++i)
      if (s.bits[i] != s.bits[i + p]) {
        periodic = false;
        break;
      }
    if (periodic) return true;
  }
  return false;
}

int compare_points(const OstrowskiWord& u, const OstrowskiWord& v) {
  if (!u.cf.same_as(v.cf))
    throw std::invalid_argument("words over different fractions");
  require_admissible(u.cf);
  if (!valid_word(u) || !valid_word(v))
    throw std::invalid_argument("invalid digit word");

  const std::size_t top = std::max(u.top(), v.top());
  std::size_t t = 0;
  for (std::size_t n = 1; n <= top && t == 0; ++n)
    if (u.digit_at(n) != v.digit_at(n)) t = n;
  if (t == 0) return 0;

  const long g = u.digit_at(t);
  const long h = v.digit_at(t);
  const Convergents c = convergents(u.cf, t);
  mpz_class j = 0;
  for (std::size_t n = 1; n < t; ++n) j += u.digit_at(n) * c.q[n];

  if (j > 0) {
    // Cluster around x_j: the points x_{j + c q_t} line up monotonically in
    // c, increasing exactly when Neg(j) is even.
    const int dir = g < h ? -1 : 1;
    return neg_parity_even(j, u.cf) ? dir : -dir;
  }
  // Around the critical point the digit-c point sits at rank 0, s_1, or
  // -s_1 (c-1): the first multiple lands on the sign_of_qn side and later
  // multiples stack outward on the opposite side.
  const long s1 = sign_of_qn(t);
  const auto rank = [s1](long digit) {
    if (digit == 0) return 0L;
    return digit == 1 ? s1 : -s1 * (digit - 1);
  };
  return rank(g) < rank(h) ? -1 : 1;
}

int compare_abs(const mpz_class& j, const mpz_class& k,
                const ContinuedFraction& cf) {
  return compare_points(encode_int(j + 1, cf), encode_int(k + 1, cf));
}

CertifiedReal semiconjugacy_phi(const OstrowskiWord& w,
                                mpfr_prec_t precision) {
  return decode_real(w, precision);
}

IntervalHierarchy build_hierarchy(const ContinuedFraction& cf,
                                  std::size_t n) {
  require_admissible(cf);
  if (n < 1) throw std::invalid_argument("level must be >= 1");
  const Convergents c = convergents(cf, n + 2);
  const long a_next = cf.quotient(n + 1);
  const long a_next2 = cf.quotient(n + 2);

  IntervalHierarchy h;
  h.level = n;
  const auto sorted_pair = [&cf](const mpz_class& x, const mpz_class& y) {
    return compare_points(encode_int(x, cf), encode_int(y, cf)) < 0
               ? std::pair<mpz_class, mpz_class>(x, y)
               : std::pair<mpz_class, mpz_class>(y, x);
  };

  // I_0^n: hull of the latest returns and their extreme multiples.  The
  // multiple a_{n+2} q_{n+1} matters when a_{n+1} = 1 and x_{q_n}, x_{q_{n+1}}
  // share a sign: it is then the extreme point on the far side of 0, and
  // omitting it would break the level-(n+1) decomposition of I_0^n.
  {
    const mpz_class cand[5] = {a_next * c.q[n], c.q[n], c.q[n + 1],
                               a_next2 * c.q[n + 1], c.q[n + 2]};
    mpz_class lo = cand[0], hi = cand[0];
    for (const mpz_class& x : cand) {
      if (compare_points(encode_int(x, cf), encode_int(lo, cf)) < 0) lo = x;
      if (compare_points(encode_int(x, cf), encode_int(hi, cf)) > 0) hi = x;
    }
    h.intervals.push_back({'I', 0, lo, hi});
  }
  for (mpz_class k = 1; k < c.q[n - 1]; ++k) {
    const auto [lo, hi] = sorted_pair(k, k + a_next * c.q[n]);
    h.intervals.push_back({'I', k, lo, hi});
  }
  const mpz_class j_span =
      a_next > 1 ? mpz_class((a_next - 1) * c.q[n]) : a_next2 * c.q[n + 1];
  for (mpz_class k = c.q[n - 1]; k < c.q[n]; ++k) {
    const auto [lo, hi] = sorted_pair(k, k + j_span);
    h.intervals.push_back({'J', k, lo, hi});
  }
  return h;
}

namespace {

struct RecurrenceContext {
  const std::vector<CertifiedReal>& values;
  const std::vector<mpz_class>& q;
  const ContinuedFraction& cf;
};

// x at orbit position i is closer to the critical point than x at position
// j exactly when the f-images compare as values.
Cmp abs_cmp(const RecurrenceContext& ctx, std::size_t i, std::size_t j) {
  return CertifiedReal::cmp(ctx.values[i + 1], ctx.values[j + 1]);
}

RecurrenceVerdict check_block(const RecurrenceContext& ctx, std::size_t base,
                              std::size_t level) {
  if (level == 0) return {};
  const std::size_t q_l = ctx.q[level].get_ui();

  // (1) no return into I_x before and including q_level.
  for (std::size_t k = 1; k <= q_l; ++k) {
    const Cmp c = abs_cmp(ctx, base + k, base);
    if (c == Cmp::indeterminate)
      return {RecurrenceOutcome::indeterminate, level, 1,
              "unresolved comparison"};
    if (c != Cmp::greater) {
      std::ostringstream os;
      os << "orbit point " << base + k << " re-enters the base interval";
      return {RecurrenceOutcome::fail, level, 1, os.str()};
    }
  }

  // (2) running minimum of the distances improves exactly at the q_i.
  std::size_t arg_min = 1;
  for (std::size_t k = 2; k <= q_l; ++k) {
    const Cmp c = abs_cmp(ctx, base + k, base + arg_min);
    if (c == Cmp::indeterminate)
      return {RecurrenceOutcome::indeterminate, level, 2,
              "unresolved comparison"};
    const bool improved = c == Cmp::less;
    bool expected = false;
    for (std::size_t i = 2; i <= level; ++i)
      if (ctx.q[i] == k) expected = true;
    if (improved != expected) {
      std::ostringstream os;
      os << "closest-return time " << (improved ? "appears" : "missing")
         << " at offset " << k << " from " << base;
      return {RecurrenceOutcome::fail, level, 2, os.str()};
    }
    if (improved) arg_min = k;
  }

  // (3) each sub-block restarts the same pattern one level down.
  const long a_l = ctx.cf.quotient(level);
  for (long m = 0; m < a_l; ++m) {
    const RecurrenceVerdict v = check_block(
        ctx, base + static_cast<std::size_t>(m) * ctx.q[level - 1].get_ui(),
        level - 1);
    if (!v.passed()) return v;
  }
  return {};
}

}  // namespace

RecurrenceVerdict verify_recurrence(const std::vector<CertifiedReal>& values,
                                    const ContinuedFraction& cf,
                                    std::size_t N) {
  if (N == 0) return {};
  const Convergents c = convergents(cf, N);
  if (!c.q[N].fits_ulong_p() || values.size() < c.q[N].get_ui() + 2)
    throw std::invalid_argument("orbit must cover x_0 .. x_{q_N + 1}");
  const RecurrenceContext ctx{values, c.q, cf};
  return check_block(ctx, 0, N);
}

}  // namespace thetarec
