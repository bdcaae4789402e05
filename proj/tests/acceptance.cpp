// Acceptance harness: ten end-to-end checks over the whole library, one
// pass/fail line each.  Exit status 0 iff every criterion passes.  All
// tolerances are pinned here in code.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "thetarec/audit.hpp"
#include "thetarec/certified_real.hpp"
#include "thetarec/cf.hpp"
#include "thetarec/model_map.hpp"
#include "thetarec/ostrowski.hpp"
#include "thetarec/quad.hpp"
#include "thetarec/renorm.hpp"
#include "thetarec/symbolic.hpp"

using namespace thetarec;

namespace {

ContinuedFraction fib() { return ContinuedFraction::parse("(1)*"); }
ContinuedFraction mixed() {
  return ContinuedFraction::parse("1,1,1,3,2,(1)*");
}
ContinuedFraction third() {
  return ContinuedFraction::parse("1,1,1,2,(1)*");
}

mpq_class pow10_inv(unsigned e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return mpq_class(1, p);
}

// Parameter enclosures shared between the scaling and measure criteria.
const ParameterEnclosure& fib12() {
  static const ParameterEnclosure pe = find_c(fib(), 12, pow10_inv(60));
  return pe;
}
const ParameterEnclosure& fib14() {
  static const ParameterEnclosure pe =
      find_c(fib(), 14, pow10_inv(80), 128, 16384);
  return pe;
}

std::vector<CertifiedReal> orbit_at(const ParameterEnclosure& pe,
                                    std::size_t steps, mpfr_prec_t prec) {
  return iterate_orbit(
      CertifiedReal::of_rational_pair(pe.lo, pe.hi, prec), steps, prec);
}

bool q_equal(const std::vector<mpz_class>& got,
             const std::vector<long>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i] != want[i]) return false;
  return true;
}

// --- criterion 1: convergent denominator tables, exact and instant --------
bool crit_convergents(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool ok =
      q_equal(convergents(fib(), 10).listed_q(),
              {1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) &&
      q_equal(convergents(ContinuedFraction::parse("1,1,1,3,2"), 5)
                  .listed_q(),
              {1, 2, 3, 11, 25});
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "q tables exact for both angles in %.3f ms", ms);
  detail = buf;
  return ok && ms < 1.0;
}

// --- criterion 2: digit-rule signs equal certified orbit signs ------------
bool crit_signs(std::string& detail) {
  std::size_t checked = 0;
  for (const ContinuedFraction& cf : {fib(), mixed(), third()}) {
    const std::size_t q8 = convergents(cf, 8).q[8].get_ui();
    const ParameterEnclosure pe = find_c(cf, 8, pow10_inv(30));
    std::vector<int> real_signs;  // index k-1 -> sign of x_k
    for (mpfr_prec_t prec = 256; prec <= 2048; prec *= 2) {
      real_signs.clear();
      const auto orbit = orbit_at(pe, q8 - 1, prec);
      bool decided = true;
      for (std::size_t k = 1; k < q8 && decided; ++k) {
        if (mpfr_sgn(orbit[k].lo()) > 0)
          real_signs.push_back(1);
        else if (mpfr_sgn(orbit[k].hi()) < 0)
          real_signs.push_back(-1);
        else
          decided = false;
      }
      if (decided) break;
    }
    if (real_signs.size() != q8 - 1) {
      detail = "orbit sign undecided within 2048 bits";
      return false;
    }
    for (std::size_t k = 1; k < q8; ++k) {
      if (sign_of(mpz_class(static_cast<long>(k)), cf) != real_signs[k - 1]) {
        detail = "sign mismatch at k=" + std::to_string(k);
        return false;
      }
      ++checked;
    }
  }
  detail = "0 mismatches over " + std::to_string(checked) +
           " orbit points (three angles, k < q_8)";
  return true;
}

// --- criterion 3: closest returns at the solved parameters ----------------
bool crit_returns(std::string& detail) {
  const ParameterEnclosure pf = find_c(fib(), 10, pow10_inv(40));
  const auto of = orbit_at(pf, 89, pf.precision);
  const std::vector<std::size_t> rf = closest_returns(of, 89);
  const std::vector<std::size_t> want_f{1, 2, 3, 5, 8, 13, 21, 34, 55, 89};

  const ParameterEnclosure pm = find_c(mixed(), 5, pow10_inv(30));
  const auto om = orbit_at(pm, 25, pm.precision);
  const std::vector<std::size_t> rm = closest_returns(om, 25);
  const std::vector<std::size_t> want_m{1, 2, 3, 11, 25};

  detail = "returns 1,2,3,5,8,...,89 and 1,2,3,11,25 reproduced";
  return rf == want_f && rm == want_m;
}

// --- criterion 4: numeration laws and real-codec error bound --------------
bool crit_ostrowski(std::string& detail) {
  std::size_t ints = 0, reals = 0;
  for (const ContinuedFraction& cf : {fib(), mixed()}) {
    const mpz_class q8 = convergents(cf, 8).q[8];
    for (mpz_class k = 0; k < q8; ++k) {
      const OstrowskiWord w = encode_int(k, cf);
      if (decode_int(w) != k) {
        detail = "decode(encode(" + k.get_str() + ")) mismatch";
        return false;
      }
      const OstrowskiWord next = increment(w);
      if (decode_int(next) != k + 1 ||
          word_order(next, encode_int(k + 1, cf)) != 0) {
        detail = "increment mismatch at k=" + k.get_str();
        return false;
      }
      ++ints;
    }

    const CertifiedReal theta = angle_value(cf, 400);
    const CertifiedReal bound = tail_bound(cf, 20, 256);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(97201UL);
    const mpz_class den = mpz_class(1) << 64;
    for (int trial = 0; trial < 100; ++trial) {
      mpq_class r(rng.get_z_bits(64), den);
      r.canonicalize();
      // Random point of the fundamental domain [-theta, 1-theta).
      const CertifiedReal x =
          theta.neg().add(CertifiedReal::of_rational(r, 400));
      const OstrowskiWord w = encode_real(x, cf, 20);
      const CertifiedReal err = x.sub(decode_real(w, 400)).abs_val();
      if (!valid_word(w) || CertifiedReal::cmp(err, bound) != Cmp::less) {
        detail = "real roundtrip exceeded the tail bound";
        return false;
      }
      ++reals;
    }
  }
  detail = std::to_string(ints) + " integer words exact, " +
           std::to_string(reals) + " real roundtrips under the tail bound";
  return true;
}

// --- criterion 5: the address map conjugates the orbit to a rotation ------
bool crit_semiconjugacy(std::string& detail) {
  std::size_t steps = 0;
  for (const ContinuedFraction& cf : {fib(), mixed()}) {
    const mpz_class q7 = convergents(cf, 7).q[7];
    const CertifiedReal theta = angle_value(cf, 320);
    CertifiedReal prev = semiconjugacy_phi(encode_int(0, cf), 320);
    for (mpz_class k = 0; k < q7; ++k) {
      const CertifiedReal cur = semiconjugacy_phi(encode_int(k + 1, cf), 320);
      if (!prev.radius_leq_2exp(-200) || !cur.radius_leq_2exp(-200)) {
        detail = "address radius above 2^-200 at k=" + k.get_str();
        return false;
      }
      // One rotation step modulo 1: the enclosure of the difference must
      // contain the exact value (0 or the wraparound unit).
      const CertifiedReal step = cur.sub(prev).sub(theta);
      if (!(step.contains_zero() || step.add_z(1).contains_zero())) {
        detail = "rotation step violated at k=" + k.get_str();
        return false;
      }
      prev = cur;
      ++steps;
    }
  }
  detail = std::to_string(steps) +
           " rotation steps certified with address radii <= 2^-200";
  return true;
}

// --- criterion 6: explicit model map realizes the combinatorics -----------
bool crit_model(std::string& detail) {
  std::size_t pairs = 0;
  for (const ContinuedFraction& cf : {fib(), mixed()}) {
    const ModelMap m = construct_model(cf, 10, ModelSeeds{});
    std::vector<CertifiedReal> values;
    values.reserve(m.orbit.size());
    for (const mpq_class& x : m.orbit)
      values.push_back(CertifiedReal::of_rational(x, 256));
    if (!verify_recurrence(values, cf, 10).passed()) {
      detail = "recurrence verdict failed";
      return false;
    }
    std::vector<OstrowskiWord> addr;
    addr.reserve(m.orbit.size());
    for (std::size_t j = 0; j < m.orbit.size(); ++j)
      addr.push_back(encode_int(mpz_class(static_cast<long>(j)), cf));
    for (std::size_t j = 0; j < m.orbit.size(); ++j)
      for (std::size_t k = j + 1; k < m.orbit.size(); ++k) {
        const int exact = cmp(m.orbit[j], m.orbit[k]);
        if (compare_points(addr[j], addr[k]) != exact) {
          detail = "symbolic order disagrees at (" + std::to_string(j) +
                   "," + std::to_string(k) + ")";
          return false;
        }
        ++pairs;
      }
    for (const auto& [stage, len] : m.stage_max_length) {
      const mpq_class cap(mpz_class(1), mpz_class(1) << stage);
      if (!(len <= cap)) {
        detail = "stage " + std::to_string(stage) + " gap above 2^-n";
        return false;
      }
    }
  }
  detail = "recurrence, " + std::to_string(pairs) +
           " exact order pairs, and 2^-n gap caps hold at depth 10";
  return true;
}

// --- criterion 7: certified scaling-law audits on Fibonacci data ----------
bool crit_audit(std::string& detail) {
  const ScalingData sd10 = scaling_data(fib12(), fib(), 10);
  const AuditReport apriori = audit_apriori(sd10);
  const AuditReport trends = audit_asymptotics(sd10);
  const AuditReport kb10 = audit_k_bounds(sd10, mpq_class(5));
  // The constant-bound hypothesis first fires at level 11, so extend the
  // data until the gate is exercised rather than vacuously skipped.
  const ScalingData sd13 = scaling_data(fib14(), fib(), 13);
  const AuditReport kb13 = audit_k_bounds(sd13, mpq_class(5));
  bool gated = false;
  for (const ClaimRecord& c : kb13.claims)
    for (std::size_t lv : c.levels) gated = gated || lv == 11;
  double sup_margin = 0.0;
  for (const ClaimRecord& c : apriori.claims)
    if (c.has_margin && c.id.find("quotient-one") != std::string::npos)
      sup_margin = c.worst_margin;
  const bool ok = apriori.passed() && trends.passed() && kb10.passed() &&
                  kb13.passed() && gated && sup_margin > 0.0;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "sup < 1 by margin %.3f; trend and C=5 bounds pass "
                "(gate live at level 11)",
                sup_margin);
  detail = buf;
  return ok;
}

// --- criterion 8: measure sums shrink; dimension bound 1/5 ----------------
bool crit_measure(std::string& detail) {
  const Convergents cv = convergents(fib(), 18);
  const auto orbit10 = orbit_at(fib12(), cv.q[12].get_ui() + 2, 128);
  const MeasureTable t10 = hausdorff_measure(orbit10, fib(), 10);
  const bool dim_ok =
      t10.dim_upper.has_value() && *t10.dim_upper <= mpq_class(1, 5);
  bool s1_ok = t10.s1_geometric == ClaimStatus::pass &&
               t10.s1_fit_ratio > 0.0 && t10.s1_fit_ratio < 1.0;
  for (const EpsTrend& tr : t10.trends)
    if (tr.eps == 1) s1_ok = s1_ok && tr.status == ClaimStatus::pass;

  const auto orbit16 = orbit_at(fib14(), cv.q[18].get_ui() + 2, 512);
  const MeasureTable t16 = hausdorff_measure(orbit16, fib(), 16);
  bool tenth_ok = false;
  for (const EpsTrend& tr : t16.trends)
    if (tr.eps == mpq_class(1, 10))
      tenth_ok = tr.status == ClaimStatus::pass &&
                 tr.to_level == 16 && tr.to_level - tr.from_level >= 2;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "dim upper bound %s <= 1/5; S_n(1) fit ratio %.3f < 1; "
                "S_n(1/10) decreasing over the deepest three levels",
                dim_ok ? t10.dim_upper->get_str().c_str() : "absent",
                t10.s1_fit_ratio);
  detail = buf;
  return dim_ok && s1_ok && tenth_ok && t10.passed() && t16.passed();
}

// --- criterion 9: renormalization replay and word recoding ----------------
bool crit_renorm(std::string& detail) {
  struct Expected {
    std::vector<long> prefix;
    int s;
    Side side;
    int b;
    std::vector<long> times;
  };
  const std::vector<Expected> table{
      {{1, 1, 1, 3, 2}, 1, Side::left, 1, {1, 2, 3, 11, 25}},
      {{1, 1, 3, 2}, -1, Side::left, 1, {1, 2, 7, 16}},
      {{1, 3, 2}, 1, Side::right, 1, {1, 4, 9}},
      {{3, 2}, 1, Side::right, 0, {1, 3, 7}},
      {{2, 2}, 1, Side::left, 0, {1, 2, 5}},
      {{1, 2}, -1, Side::right, 1, {1, 3}},
  };
  RenormState st = make_state(mixed(), 1);
  for (std::size_t row = 0; row < table.size(); ++row) {
    const Expected& e = table[row];
    bool ok = st.s == e.s && st.j_side == e.side && st.b == e.b;
    for (std::size_t i = 0; ok && i < e.prefix.size(); ++i)
      ok = st.theta.quotient(i + 1) == e.prefix[i];
    if (ok) {
      const auto times = return_times(st, e.times.size());
      ok = q_equal(times, e.times);
    }
    if (!ok) {
      detail = "replay state " + std::to_string(row) + " mismatched";
      return false;
    }
    st = renorm_step(st);
  }
  if (st.s != -1 || st.b != 0 || st.theta.quotient(1) != 2) {
    detail = "state after six steps mismatched";
    return false;
  }

  std::mt19937 rng(579203u);
  std::uniform_int_distribution<int> quot(1, 4);
  std::uniform_int_distribution<int> extra(8, 14);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> prefix{1, 1, 1};
    const int n = extra(rng);
    for (int i = 0; i < n; ++i) prefix.push_back(quot(rng));
    const ContinuedFraction cf =
        ContinuedFraction::constant_tail(std::move(prefix), 1);
    const BinaryWord w = sturmian_word(cf, 2001, 64);
    const BinaryWord r = recode_word(w);
    if (r.size() < 1000) {
      detail = "recoded word shorter than 1000 bits";
      return false;
    }
    const BinaryWord v = sturmian_word(sigma_shift(cf), 1000, 64);
    for (std::size_t i = 0; i < 1000; ++i)
      if (r.bits[i] != v.bits[i]) {
        detail = "recoding mismatch at bit " + std::to_string(i) +
                 " (trial " + std::to_string(trial) + ")";
        return false;
      }
  }
  detail = "six-step replay exact; 20 random angles recode to the shifted "
           "word over 1000-bit prefixes";
  return true;
}

// --- criterion 10: growth-condition classifier at the exact threshold -----
bool crit_classifier(std::string& detail) {
  // A record value 2 after an all-ones run: the gap between record
  // positions must strictly exceed 2^((5+tau)*2).
  const auto built = [](std::size_t record_pos) {
    std::vector<long> terms(record_pos + 8, 1);
    terms[record_pos - 1] = 2;
    return ContinuedFraction(std::move(terms));
  };
  struct Case {
    mpq_class tau;
    std::size_t threshold;  // 2^((5+tau)*2)
  };
  const std::vector<Case> cases{{mpq_class(0), 1024},
                                {mpq_class(1, 2), 2048},
                                {mpq_class(1), 4096}};
  for (const Case& c : cases) {
    // Gap threshold+1 is the first accepted value; gap == threshold rejects.
    const auto pass =
        classify_angle(built(c.threshold + 2), c.threshold + 12, c.tau, 3);
    const auto fail =
        classify_angle(built(c.threshold + 1), c.threshold + 12, c.tau, 3);
    const bool ok = pass.admissible && pass.growth_condition_ok &&
                    pass.record_positions ==
                        std::vector<std::size_t>{1, c.threshold + 2} &&
                    !fail.growth_condition_ok &&
                    fail.growth_violations == std::vector<std::size_t>{1};
    if (!ok) {
      detail = "threshold 2^" + std::to_string(c.threshold) + " misjudged";
      return false;
    }
  }
  detail = "accepts gap T+1 and rejects gap T at T = 1024, 2048, 4096";
  return true;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)(std::string&);
  };
  const std::vector<Entry> entries{
      {"convergent tables", crit_convergents},
      {"sign oracle vs certified orbits", crit_signs},
      {"closest-return reproduction", crit_returns},
      {"numeration laws", crit_ostrowski},
      {"rotation semiconjugacy", crit_semiconjugacy},
      {"model-map witness", crit_model},
      {"scaling-law audit", crit_audit},
      {"measure trend", crit_measure},
      {"renormalization replay", crit_renorm},
      {"growth classifier", crit_classifier},
  };
  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = entries[i].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("criterion %2zu [%s]: %s (%.2f s) — %s\n", i + 1,
                entries[i].name, ok ? "PASS" : "FAIL", secs, detail.c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
