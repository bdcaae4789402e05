#include "thetarec/quad.hpp"

#include <optional>
#include <stdexcept>
#include <string>

#include "thetarec/symbolic.hpp"

namespace thetarec {

namespace {

std::size_t to_steps(const mpz_class& v) {
  if (!v.fits_ulong_p())
    throw std::overflow_error("orbit index does not fit a machine word");
  return static_cast<std::size_t>(v.get_ui());
}

void require_admissible(const ContinuedFraction& cf) {
  if (cf.quotient(1) != 1 || cf.quotient(2) != 1 || cf.quotient(3) != 1)
    throw std::invalid_argument("angle is not admissible (need a_1 = a_2 = a_3 = 1)");
}

// Kneading comparison of the orbit at an exact rational parameter against
// the target bits, certified by precision escalation.  order < 0 / > 0 when
// the sample's sign prefix sorts below / above the target in the signed
// kneading order; 0 when all scanned bits match.
struct ProbeOutcome {
  int order = 0;
  mpfr_prec_t used = 0;
};

enum class ProbeStatus { decided, exact_zero, exhausted };

ProbeStatus probe_kneading(const mpq_class& c, const SignSequence& target,
                           mpfr_prec_t start, mpfr_prec_t cap,
                           ProbeOutcome& out) {
  const std::size_t want = target.length();
  for (mpfr_prec_t prec = start;; prec *= 2) {
    const CertifiedReal cb = CertifiedReal::of_rational(c, prec);
    CertifiedReal x = CertifiedReal::exact(0, prec);
    SignSequence sample;
    bool widened = false;
    for (std::size_t k = 1; k <= want; ++k) {
      x = x.sqr().add(cb);
      const std::optional<int> s = x.certified_sign();
      if (!s) {
        widened = true;
        break;
      }
      if (*s == 0) return ProbeStatus::exact_zero;
      sample.bits.push_back(*s > 0 ? 1 : 0);
      if (sample.bits.back() != target.bit(k)) break;  // order is decided
    }
    if (!widened) {
      out.order = compare_kneading(sample, target);
      out.used = prec;
      return ProbeStatus::decided;
    }
    if (prec * 2 > cap) return ProbeStatus::exhausted;
  }
}

}  // namespace

std::vector<CertifiedReal> iterate_orbit(const CertifiedReal& c,
                                         std::size_t steps,
                                         mpfr_prec_t precision) {
  if (steps < 1) throw std::invalid_argument("iterate_orbit: steps must be >= 1");
  std::vector<CertifiedReal> orbit;
  orbit.reserve(steps + 1);
  const CertifiedReal cc = c.at_precision(precision);
  orbit.push_back(CertifiedReal::exact(0, precision));
  for (std::size_t k = 1; k <= steps; ++k) orbit.push_back(orbit.back().sqr().add(cc));
  return orbit;
}

std::vector<std::size_t> closest_returns(
    const std::vector<CertifiedReal>& orbit, std::size_t horizon) {
  if (orbit.size() <= horizon)
    throw std::invalid_argument("closest_returns: orbit shorter than horizon");
  if (horizon == 0) return {};
  std::vector<std::size_t> times{1};
  CertifiedReal best = orbit[1].abs_val();
  for (std::size_t k = 2; k <= horizon; ++k) {
    const CertifiedReal mag = orbit[k].abs_val();
    switch (CertifiedReal::cmp(mag, best)) {
      case Cmp::less:
        times.push_back(k);
        best = mag;
        break;
      case Cmp::indeterminate:
        throw PrecisionExhausted("closest_returns: |x_" + std::to_string(k) +
                                 "| is not separated from the running minimum");
      default:
        break;
    }
  }
  return times;
}

ParameterEnclosure find_c(const ContinuedFraction& cf, std::size_t depth,
                          const mpq_class& target_width,
                          mpfr_prec_t start_precision,
                          mpfr_prec_t max_precision) {
  require_admissible(cf);
  if (depth < 3) throw std::invalid_argument("find_c: depth must be >= 3");
  if (target_width <= 0)
    throw std::invalid_argument("find_c: target width must be positive");

  const Convergents cv = convergents(cf, depth + 1);
  const std::size_t qN = to_steps(cv.q[depth]);
  std::size_t scan_len = qN;
  SignSequence target = kneading_sequence(cf, scan_len);
  constexpr std::size_t kScanCeiling = std::size_t{1} << 22;

  ParameterEnclosure pe;
  pe.lo = mpq_class(-2);
  pe.hi = mpq_class(0);
  pe.depth = depth;

  // Orientation check at the left end: the kneading data of c = -2 must
  // sort below the target, otherwise the comparator and the bracket
  // disagree and bisection would be meaningless.
  {
    ProbeOutcome left;
    if (probe_kneading(pe.lo, target, start_precision, max_precision, left) !=
            ProbeStatus::decided ||
        left.order >= 0)
      throw std::logic_error("find_c: kneading order is inverted at c = -2");
  }

  const auto sample_order = [&](const mpq_class& probe,
                                ProbeOutcome& out) -> ProbeStatus {
    // A probe indistinguishable from the solution within the current scan
    // gets compared against ever longer prefixes until a difference shows;
    // a rational probe always differs somewhere.
    for (;;) {
      const ProbeStatus st =
          probe_kneading(probe, target, start_precision, max_precision, out);
      if (st != ProbeStatus::decided || out.order != 0) return st;
      if (scan_len >= kScanCeiling)
        throw std::logic_error(
            "find_c: probe matched the kneading data beyond the scan ceiling");
      scan_len *= 2;
      target = kneading_sequence(cf, scan_len);
    }
  };

  const auto bisect_once = [&]() {
    const mpq_class mid = pe.midpoint();
    const mpq_class gap = pe.width();
    for (int attempt = 0; attempt < 16; ++attempt) {
      // Deterministic fallback ladder around the midpoint: skips samples
      // whose orbit hits 0 exactly (superattracting parameters) or resists
      // sign certification at the precision cap.
      mpq_class probe = mid;
      if (attempt > 0) {
        mpq_class off = gap / mpq_class(1 << ((attempt + 1) / 2 + 5));
        probe = (attempt % 2 == 1) ? mpq_class(mid + off) : mpq_class(mid - off);
      }
      ProbeOutcome out;
      const ProbeStatus st = sample_order(probe, out);
      if (st != ProbeStatus::decided) continue;
      ++pe.probes;
      if (out.order < 0)
        pe.lo = probe;
      else
        pe.hi = probe;
      if (!(pe.lo < pe.hi))
        throw std::logic_error("find_c: bracket collapsed");
      return;
    }
    throw PrecisionExhausted(
        "find_c: no certifiable sample near the current midpoint");
  };

  constexpr std::size_t kProbeCeiling = 20000;
  while (pe.width() > target_width) {
    if (pe.probes > kProbeCeiling)
      throw std::logic_error("find_c: bisection did not reach the target width");
    bisect_once();
  }

  // The midpoint must both reproduce the kneading prefix and pass the
  // recurrence verifier; on failure the bracket is narrowed further (the
  // kneading window of the requested depth may be smaller than the width
  // target) and the midpoint is re-examined.
  for (;;) {
    if (pe.probes > kProbeCeiling)
      throw std::logic_error("find_c: midpoint never verified the recurrence");
    const mpq_class mid = pe.midpoint();
    ProbeOutcome out;
    const SignSequence prefix = kneading_sequence(cf, qN);
    if (probe_kneading(mid, prefix, start_precision, max_precision, out) !=
            ProbeStatus::decided ||
        out.order != 0) {
      bisect_once();
      continue;
    }
    bool verified = false;
    for (mpfr_prec_t prec = std::max(out.used, start_precision);
         prec <= max_precision; prec *= 2) {
      const std::vector<CertifiedReal> orbit =
          iterate_orbit(CertifiedReal::of_rational(mid, prec), qN + 1, prec);
      const RecurrenceVerdict v = verify_recurrence(orbit, cf, depth);
      if (v.outcome == RecurrenceOutcome::indeterminate) continue;
      if (v.passed()) {
        verified = true;
        pe.precision = prec;
      }
      break;
    }
    if (verified) return pe;
    bisect_once();
  }
}

ScalingData scaling_data(const ParameterEnclosure& c,
                         const ContinuedFraction& cf, std::size_t n_max,
                         mpfr_prec_t start_precision,
                         mpfr_prec_t max_precision) {
  require_admissible(cf);
  if (n_max < 2) throw std::invalid_argument("scaling_data: n_max must be >= 2");
  const Convergents cv = convergents(cf, n_max + 1);
  // Largest orbit index used: a_{n_max+1} q_{n_max} = q_{n_max+1} - q_{n_max-1}.
  const std::size_t last = to_steps(cv.q[n_max + 1] - cv.q[n_max - 1]);

  std::size_t deepest = 1;
  for (mpfr_prec_t prec = start_precision;; prec *= 2) {
    const std::vector<CertifiedReal> orbit = iterate_orbit(
        CertifiedReal::of_rational_pair(c.lo, c.hi, prec), last, prec);

    ScalingData data;
    data.n_max = n_max;
    data.precision = prec;
    data.d1 = orbit[1].abs_val();

    bool certified = true;
    for (std::size_t n = 2; n <= n_max && certified; ++n) {
      ScalingLevel level;
      level.n = n;
      level.a_next = cf.quotient(n + 1);
      const std::size_t qn = to_steps(cv.q[n]);
      const CertifiedReal& prev_d1 =
          n == 2 ? data.d1 : data.levels.back().d.front();
      for (long i = 1; i <= level.a_next; ++i)
        level.d.push_back(orbit[static_cast<std::size_t>(i) * qn].abs_val());
      // Certify this level's stretch of the interleaving chain,
      // d_n^1 < d_n^2 < ... < d_n^{a_{n+1}} < d_{n-1}^1; consecutive levels
      // share the d_{n-1}^1 link, so these stretches cover the whole chain.
      for (std::size_t i = 0; i + 1 < level.d.size() && certified; ++i)
        certified = CertifiedReal::cmp(level.d[i], level.d[i + 1]) == Cmp::less;
      if (certified)
        certified = CertifiedReal::cmp(level.d.back(), prev_d1) == Cmp::less;
      if (!certified) break;

      for (std::size_t i = 0; i + 1 < level.d.size(); ++i)
        level.delta.push_back(level.d[i].div(level.d[i + 1]));
      level.delta.push_back(level.d.back().div(prev_d1));
      level.lambda = level.d.front().div(prev_d1);

      CertifiedReal deriv = CertifiedReal::exact(1, prec);
      for (std::size_t j = 1; j < qn; ++j) deriv = deriv.mul(orbit[j].mul_2si(1));
      level.deriv = deriv;

      data.levels.push_back(std::move(level));
      deepest = n;
    }

    if (certified) {
      for (std::size_t n = 1; n < n_max; ++n)
        data.alpha.push_back(data.levels[n - 1].delta.back());
      return data;
    }
    if (prec * 2 > max_precision)
      throw PrecisionExhausted(
          "scaling_data: interleaving chain uncertified beyond level " +
          std::to_string(deepest) + " at the precision cap");
  }
}

}  // namespace thetarec
