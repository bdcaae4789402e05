#include "thetarec/ostrowski.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace thetarec {

namespace {

// q_0..q_n, realizing quotients on demand.
std::vector<mpz_class> q_upto(const ContinuedFraction& cf, std::size_t n) {
  std::vector<mpz_class> q;
  q.reserve(n + 1);
  q.emplace_back(1);
  if (n >= 1) q.emplace_back(cf.quotient(1));
  for (std::size_t i = 2; i <= n; ++i)
    q.push_back(cf.quotient(i) * q[i - 1] + q[i - 2]);
  return q;
}

std::size_t word_base_for(const ContinuedFraction& cf) {
  return cf.quotient(1) > 1 ? 0 : 1;
}

// Largest digit allowed at position n; `free` means the previous digit is
// zero, which unlocks the full value a_{n+1}.
long max_digit(const ContinuedFraction& cf, std::size_t n, bool free) {
  if (n == 0) return cf.quotient(1) - 1;
  long a = cf.quotient(n + 1);
  return free ? a : a - 1;
}

}  // namespace

long OstrowskiWord::digit_at(std::size_t n) const {
  if (n < base || n - base >= digits.size()) return 0;
  return digits[n - base];
}

bool valid_word(const OstrowskiWord& w) {
  for (std::size_t i = 0; i < w.digits.size(); ++i) {
    const std::size_t n = w.base + i;
    const long g = w.digits[i];
    if (g < 0) return false;
    if (n == 0) {
      if (g > w.cf.quotient(1) - 1) return false;
      continue;
    }
    const long a = w.cf.quotient(n + 1);
    if (g > a) return false;
    if (g == a && w.digit_at(n - 1) != 0) return false;
  }
  return true;
}

OstrowskiWord encode_int(const mpz_class& k, const ContinuedFraction& cf) {
  if (k < 0) throw std::invalid_argument("negative integer has no expansion");
  const std::size_t base = word_base_for(cf);
  OstrowskiWord w{cf, {}, base, WordKind::integer_word};
  if (k == 0) {
    w.digits.assign(1, 0);
    return w;
  }
  // Realize denominators until one exceeds k; the last index at or below k
  // is the top digit position.
  std::vector<mpz_class> q{1};
  try {
    for (std::size_t i = 1; q.back() <= k; ++i)
      q.push_back(i == 1 ? mpz_class(cf.quotient(1))
                         : mpz_class(cf.quotient(i) * q[i - 1] + q[i - 2]));
  } catch (const std::out_of_range&) {
    throw std::out_of_range(
        "integer exceeds the range representable by the realized quotients");
  }
  const std::size_t top = q.size() - 2;
  w.digits.assign(top - base + 1, 0);
  mpz_class rem = k;
  for (std::size_t n = top + 1; n-- > base;) {
    mpz_class g = rem / q[n];
    rem -= g * q[n];
    w.digits[n - base] = static_cast<long>(g.get_si());
  }
  return w;
}

mpz_class decode_int(const OstrowskiWord& w) {
  const std::vector<mpz_class> q = q_upto(w.cf, w.top());
  mpz_class acc = 0;
  for (std::size_t i = 0; i < w.digits.size(); ++i)
    acc += w.digits[i] * q[w.base + i];
  return acc;
}

OstrowskiWord increment(const OstrowskiWord& w) {
  return encode_int(decode_int(w) + 1, w.cf);
}

int word_order(const OstrowskiWord& u, const OstrowskiWord& v) {
  const std::size_t top = std::max(u.top(), v.top());
  for (std::size_t n = top + 1; n-- > 0;) {
    const long a = u.digit_at(n), b = v.digit_at(n);
    if (a != b) return a < b ? -1 : 1;
    if (n == 0) break;
  }
  return 0;
}

std::string word_str(const OstrowskiWord& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.digits.size(); ++i) {
    if (i) os << ',';
    os << w.digits[i];
  }
  os << ']';
  return os.str();
}

OstrowskiWord parse_word(const std::string& text, const ContinuedFraction& cf,
                         WordKind kind, std::size_t base) {
  std::string body = text;
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']')
    body = body.substr(1, body.size() - 2);
  OstrowskiWord w{cf, {}, base, kind};
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    long g = std::stol(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (pos != tok.size() || g < 0)
      throw std::invalid_argument("bad digit token: " + tok);
    w.digits.push_back(g);
  }
  if (w.digits.empty()) throw std::invalid_argument("empty digit list");
  return w;
}

std::vector<CertifiedReal> theta_lengths(const ContinuedFraction& cf,
                                         std::size_t count,
                                         mpfr_prec_t abs_bits) {
  const Convergents c = convergents(cf, std::max<std::size_t>(count, 1));
  const mpfr_prec_t qbits = static_cast<mpfr_prec_t>(
      mpz_sizeinbase(c.q[count].get_mpz_t(), 2));
  const CertifiedReal theta =
      angle_value(cf, abs_bits + qbits + 8).at_precision(abs_bits + qbits + 64);
  std::vector<CertifiedReal> out;
  out.reserve(count + 1);
  for (std::size_t n = 0; n <= count; ++n)
    out.push_back(theta.mul_z(c.q[n]).sub_z(c.p[n]));
  return out;
}

CertifiedReal tail_bound(const ContinuedFraction& cf, std::size_t depth,
                         mpfr_prec_t precision) {
  const auto th = theta_lengths(cf, depth + 1, precision);
  return th[depth].abs_val().add(th[depth + 1].abs_val());
}

OstrowskiWord encode_real(const CertifiedReal& x, const ContinuedFraction& cf,
                          std::size_t depth, const RealCodecOptions& opt) {
  const std::size_t base = word_base_for(cf);
  if (depth < base) throw std::invalid_argument("depth below first position");

  mpfr_prec_t prec = opt.start_precision;
  std::size_t lookahead = opt.guard_positions;
  while (true) {
    const std::size_t W = depth + lookahead;
    const auto th = theta_lengths(cf, W + 1, prec);

    // Value ranges reachable from position n onward, split by whether the
    // previous digit is zero (index 1) or nonzero (index 0).  tmin/tmax
    // enclose the exact inf/sup; the range itself is half-open at the top
    // because the all-maximal tail on even positions is the excluded
    // representation.
    const CertifiedReal slack_mag = th[W].abs_val().add(th[W + 1].abs_val());
    const CertifiedReal slack = CertifiedReal::hull(slack_mag.neg(), slack_mag);
    std::vector<std::array<CertifiedReal, 2>> tmin(W + 2), tmax(W + 2);
    tmin[W + 1] = {slack, slack};
    tmax[W + 1] = {slack, slack};
    for (std::size_t n = W + 1; n-- > base;) {
      for (int f = 0; f < 2; ++f) {
        const long A = max_digit(cf, n, f == 1);
        CertifiedReal mn = tmin[n + 1][1], mx = tmax[n + 1][1];  // g = 0
        for (long g = 1; g <= A; ++g) {
          const CertifiedReal shift = th[n].mul_l(g);
          mn = CertifiedReal::interval_min(mn, shift.add(tmin[n + 1][0]));
          mx = CertifiedReal::interval_max(mx, shift.add(tmax[n + 1][0]));
        }
        tmin[n][f] = mn;
        tmax[n][f] = mx;
      }
    }

    CertifiedReal rem = x.at_precision(prec + 64);
    std::vector<long> digits;
    bool prev_zero = true;
    bool ambiguous = false;
    for (std::size_t n = base; n <= depth; ++n) {
      const long A = max_digit(cf, n, prev_zero);
      bool placed = false;
      for (long g = A; g >= 0; --g) {
        const CertifiedReal r2 = g ? rem.sub(th[n].mul_l(g)) : rem;
        const int nf = g == 0 ? 1 : 0;
        const CertifiedReal& lo_b = tmin[n + 1][nf];
        const CertifiedReal& hi_b = tmax[n + 1][nf];
        if (mpfr_cmp(r2.hi(), lo_b.lo()) < 0 ||
            mpfr_cmp(r2.lo(), hi_b.hi()) >= 0)
          continue;  // certifiably unreachable with this digit
        if (mpfr_cmp(r2.lo(), lo_b.hi()) >= 0 &&
            mpfr_cmp(r2.hi(), hi_b.lo()) < 0) {
          digits.push_back(g);
          rem = r2;
          prev_zero = g == 0;
          placed = true;
        } else {
          ambiguous = true;  // neither side certifiable at this precision
        }
        break;
      }
      if (ambiguous) break;
      if (!placed) {
        // Every digit certifiably fails.  At the first position that means
        // the input sits outside the fundamental interval; later on it
        // would contradict the digit already certified one step earlier.
        if (n == base)
          throw std::domain_error(
              "value certifiably outside the fundamental interval");
        throw std::logic_error("digit search dead end");
      }
    }
    if (!ambiguous)
      return OstrowskiWord{cf, std::move(digits), base, WordKind::real_word};
    if (prec >= opt.max_precision)
      throw PrecisionExhausted(
          "digit remained ambiguous at the precision cap (input ball too "
          "wide, or the value lies on a numeration boundary)");
    prec = std::min<mpfr_prec_t>(prec * 2, opt.max_precision);
    lookahead += opt.guard_positions;
  }
}

CertifiedReal decode_real(const OstrowskiWord& w, mpfr_prec_t precision) {
  const auto th = theta_lengths(w.cf, w.top(), precision);
  CertifiedReal acc = CertifiedReal::exact(0L, precision + 64);
  for (std::size_t i = 0; i < w.digits.size(); ++i)
    if (w.digits[i] != 0) acc = acc.add(th[w.base + i].mul_l(w.digits[i]));
  return acc;
}

}  // namespace thetarec
