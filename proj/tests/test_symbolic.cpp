#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "thetarec/cf.hpp"
#include "thetarec/ostrowski.hpp"
#include "thetarec/symbolic.hpp"

using namespace thetarec;

namespace {

ContinuedFraction fib() { return ContinuedFraction::constant_tail({}, 1); }

std::vector<CertifiedReal> order_realized_orbit(const ContinuedFraction& cf,
                                                std::size_t count) {
  // Places x_0..x_{count-1} at exact rationals consistent with the symbolic
  // total order, so order-only predicates behave like a genuine orbit.
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<OstrowskiWord> words;
  for (std::size_t i = 0; i < count; ++i)
    words.push_back(encode_int(mpz_class(static_cast<unsigned long>(i)), cf));
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return compare_points(words[a], words[b]) < 0;
  });
  std::vector<CertifiedReal> values(count, CertifiedReal(64));
  for (std::size_t rank = 0; rank < count; ++rank) {
    mpq_class pos(2 * static_cast<long>(rank + 1), static_cast<long>(count) + 1);
    values[idx[rank]] = CertifiedReal::of_rational(pos - 1, 128);
  }
  return values;
}

}  // namespace

TEST_CASE("sign rule at the return times q_n") {
  const ContinuedFraction cf = fib();
  const Convergents c = convergents(cf, 10);
  const int expected[5] = {-1, 1, 1, -1, -1};
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(sign_of(c.q[n], cf) == expected[n - 1]);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(sign_of(c.q[n], cf) == sign_of_qn(n));
    CHECK(sign_of_qn(n) == ((n % 4 == 0 || n % 4 == 1) ? -1 : 1));
  }
}

TEST_CASE("multiples of a return time flip the sign") {
  const ContinuedFraction cf = ContinuedFraction::parse("1,1,1,3,(1)*");
  CHECK(sign_of(11, cf) == -1);  // q_4, 4 = 0 mod 4
  CHECK(sign_of(22, cf) == 1);   // 2 q_4
  CHECK(sign_of(33, cf) == 1);   // 3 q_4
}

TEST_CASE("the lowest nonzero digit dominates") {
  const ContinuedFraction cf = fib();
  CHECK(sign_of(4, cf) == -1);   // 4 = q_1 + q_3, sign of x_1
  CHECK(sign_of(13, cf) == 1);   // 13 = q_6 alone
  CHECK(sign_of(7, cf) == 1);    // 7 = q_2 + q_4, sign of x_{q_2}
  CHECK_THROWS_AS(sign_of(0, cf), std::invalid_argument);
  CHECK_THROWS_AS(sign_of(5, ContinuedFraction::parse("2,(1)*")),
                  std::invalid_argument);
}

TEST_CASE("negative-count parity at q_n follows the mod-4 rule") {
  for (const char* text : {"(1)*", "1,1,1,2,(1)*", "1,1,1,3,2,(1)*"}) {
    CAPTURE(text);
    const ContinuedFraction cf = ContinuedFraction::parse(text);
    const Convergents c = convergents(cf, 10);
    for (std::size_t n = 1; n <= 10; ++n)
      CHECK(neg_parity_even(c.q[n], cf) == (n % 4 == 0 || n % 4 == 1));
  }
}

TEST_CASE("negative counts agree with brute-force sign summation") {
  for (const char* text : {"(1)*", "1,1,1,2,(1)*"}) {
    CAPTURE(text);
    const ContinuedFraction cf = ContinuedFraction::parse(text);
    const Convergents c = convergents(cf, 7);
    mpz_class running = 0;
    for (mpz_class m = 1; m <= c.q[7]; ++m) {
      CHECK(neg_count(m, cf) == running);
      if (sign_of(m, cf) < 0) ++running;
    }
  }
  CHECK(neg_count(1, fib()) == 0);
}

TEST_CASE("kneading prefixes") {
  const SignSequence fib_kneading = kneading_sequence(fib(), 5);
  CHECK(fib_kneading.str() == "01100");
  const ContinuedFraction other = ContinuedFraction::parse("1,1,1,3,2,(1)*");
  const SignSequence s = kneading_sequence(other, 5);
  CHECK(s.str() == "01101");
  for (std::size_t i = 1; i <= 5; ++i)
    CHECK(s.bit(i) == (sign_of(mpz_class(static_cast<long>(i)), other) > 0
                           ? 1
                           : 0));
}

TEST_CASE("kneading sequences are aperiodic and separate angles") {
  const ContinuedFraction cf = ContinuedFraction::parse("1,1,1,(2)*");
  const SignSequence s = kneading_sequence(cf, 10000);
  CHECK_FALSE(has_periodic_tail(s, 100));
  SignSequence alternating;
  for (int i = 0; i < 400; ++i) alternating.bits.push_back(i % 2);
  CHECK(has_periodic_tail(alternating, 100));

  const SignSequence a = kneading_sequence(fib(), 12);
  const SignSequence b =
      kneading_sequence(ContinuedFraction::parse("1,1,1,2,(1)*"), 12);
  CHECK(a.str() != b.str());
  CHECK(compare_kneading(a, b) != 0);
  CHECK(compare_kneading(a, b) == -compare_kneading(b, a));
  CHECK(compare_kneading(a, a) == 0);
}

TEST_CASE("return points approach the critical point monotonically") {
  const ContinuedFraction cf = fib();
  const Convergents c = convergents(cf, 10);
  for (std::size_t n = 2; n <= 10; ++n)
    CHECK(compare_abs(c.q[n], c.q[n - 1], cf) == -1);
}

TEST_CASE("block chain of distances for a large quotient") {
  const ContinuedFraction cf = ContinuedFraction::parse("1,1,1,3,3,(1)*");
  CHECK(compare_abs(3, 33, cf) == 1);    // |x_{q_3}| > |x_{a_5 q_4}|
  CHECK(compare_abs(33, 22, cf) == 1);
  CHECK(compare_abs(22, 11, cf) == 1);   // ... > |x_{q_4}|
}

TEST_CASE("order against the critical point is the sign") {
  const ContinuedFraction cf = fib();
  const OstrowskiWord zero = encode_int(0, cf);
  for (long k = 1; k <= 20; ++k) {
    const OstrowskiWord w = encode_int(k, cf);
    CHECK(compare_points(zero, w) == -sign_of(mpz_class(k), cf));
    CHECK(compare_points(w, w) == 0);
  }
}

TEST_CASE("point order is a strict total order") {
  const ContinuedFraction cf = fib();
  const Convergents c = convergents(cf, 10);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(98765UL);
  std::vector<OstrowskiWord> ws;
  for (int i = 0; i < 40; ++i)
    ws.push_back(encode_int(rng.get_z_range(c.q[10]), cf));
  for (const auto& u : ws)
    for (const auto& v : ws) {
      const int uv = compare_points(u, v);
      CHECK(uv == -compare_points(v, u));
      if (decode_int(u) == decode_int(v)) CHECK(uv == 0);
    }
  for (std::size_t a = 0; a < ws.size(); a += 7)
    for (std::size_t b = 0; b < ws.size(); b += 5)
      for (std::size_t d = 0; d < ws.size(); d += 3) {
        const int ab = compare_points(ws[a], ws[b]);
        const int bd = compare_points(ws[b], ws[d]);
        if (ab < 0 && bd < 0) CHECK(compare_points(ws[a], ws[d]) < 0);
      }
  CHECK_THROWS_AS(compare_points(encode_int(1, cf), encode_int(1, fib())),
                  std::invalid_argument);
}

TEST_CASE("closest returns agree between symbolic order and the circle") {
  // Dual route for the defining recurrence.  Symbolically, x_{q_n} lies
  // closer to 0 than every earlier orbit point.  On the circle, the
  // certified distance from k*theta to the nearest integer reaches a new
  // running minimum exactly when k is a denominator q_n.  The two routes
  // must pick out the same set of indices.
  for (const char* text : {"(1)*", "1,1,1,3,2,(1)*", "1,1,1,1,4,1,2,(1)*"}) {
    CAPTURE(text);
    const ContinuedFraction cf = ContinuedFraction::parse(text);
    const Convergents c = convergents(cf, 12);
    std::size_t depth = 3;
    while (depth + 1 <= 12 && c.q[depth + 1] <= 90) ++depth;
    const std::size_t qN = c.q[depth].get_ui();
    std::set<std::size_t> returns;
    for (std::size_t n = 1; n <= depth; ++n) returns.insert(c.q[n].get_ui());

    const CertifiedReal one = CertifiedReal::exact(1, 192);
    std::vector<CertifiedReal> dist;  // dist[k-1] for k = 1..qN
    for (std::size_t k = 1; k <= qN; ++k) {
      const OstrowskiWord w =
          encode_int(mpz_class(static_cast<unsigned long>(k)), cf);
      const CertifiedReal mag = decode_real(w, 192).abs_val();
      dist.push_back(CertifiedReal::interval_min(mag, one.sub(mag)));
    }
    CertifiedReal best = dist[0];
    for (std::size_t k = 2; k <= qN; ++k) {
      CAPTURE(k);
      const Cmp d = CertifiedReal::cmp(dist[k - 1], best);
      REQUIRE(d != Cmp::indeterminate);
      const bool circle_min = d == Cmp::less;
      CHECK(circle_min == (returns.count(k) != 0));
      if (circle_min) best = dist[k - 1];

      mpz_class kz(static_cast<unsigned long>(k));
      bool symbolic_min = true;
      for (std::size_t j = 1; j < k && symbolic_min; ++j)
        symbolic_min = compare_abs(kz, mpz_class(static_cast<unsigned long>(j)),
                                   cf) < 0;
      CHECK(symbolic_min == circle_min);
    }
  }
}

TEST_CASE("circle coordinates: values, rotation step, injectivity") {
  const ContinuedFraction cf = fib();
  const CertifiedReal theta = angle_value(cf, 300);
  const auto th = theta_lengths(cf, 8, 256);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Convergents c = convergents(cf, n);
    const CertifiedReal phi =
        semiconjugacy_phi(encode_int(c.q[n], cf), 256);
    CHECK(phi.sub(th[n]).contains_zero());
  }
  CHECK(semiconjugacy_phi(encode_int(0, cf), 128).cmp_q(mpq_class(0)) ==
        Cmp::equal);

  const Convergents c7 = convergents(cf, 7);
  for (mpz_class k = 0; k < c7.q[7]; ++k) {
    const CertifiedReal step =
        semiconjugacy_phi(encode_int(k + 1, cf), 256)
            .sub(semiconjugacy_phi(encode_int(k, cf), 256))
            .sub(theta);
    CHECK((step.contains_zero() || step.add_z(1).contains_zero()));
  }

  gmp_randclass rng(gmp_randinit_default);
  rng.seed(424242UL);
  for (int i = 0; i < 30; ++i) {
    const mpz_class a = rng.get_z_range(c7.q[7]);
    const mpz_class b = rng.get_z_range(c7.q[7]);
    if (a == b) continue;
    const Cmp c = CertifiedReal::cmp(
        semiconjugacy_phi(encode_int(a, cf), 256),
        semiconjugacy_phi(encode_int(b, cf), 256));
    CHECK((c == Cmp::less || c == Cmp::greater));
  }
}

namespace {

// Convenience wrappers for hierarchy assertions.
int cmp_idx(const ContinuedFraction& cf, const mpz_class& a,
            const mpz_class& b) {
  return compare_points(encode_int(a, cf), encode_int(b, cf));
}

const SymbolicInterval& find_interval(const IntervalHierarchy& h,
                                      const mpz_class& index) {
  for (const auto& iv : h.intervals)
    if (iv.index == index) return iv;
  throw std::logic_error("interval not found");
}

void check_level(const ContinuedFraction& cf, std::size_t n) {
  const Convergents c = convergents(cf, n + 2);
  const IntervalHierarchy h = build_hierarchy(cf, n);
  REQUIRE(mpz_class(static_cast<long>(h.intervals.size())) == c.q[n]);

  // Sorted by the point order, consecutive intervals must be disjoint.
  std::vector<const SymbolicInterval*> sorted;
  for (const auto& iv : h.intervals) sorted.push_back(&iv);
  std::sort(sorted.begin(), sorted.end(),
            [&](const SymbolicInterval* a, const SymbolicInterval* b) {
              return cmp_idx(cf, a->lo_index, b->lo_index) < 0;
            });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    CHECK(cmp_idx(cf, sorted[i]->hi_index, sorted[i + 1]->lo_index) < 0);

  // Every orbit index below q_n lies in exactly one interval.
  for (mpz_class j = 0; j < c.q[n]; ++j) {
    int containing = 0;
    for (const auto& iv : h.intervals)
      if (cmp_idx(cf, iv.lo_index, j) <= 0 && cmp_idx(cf, j, iv.hi_index) <= 0)
        ++containing;
    CHECK(containing == 1);
  }

  // Nesting into level n+1: children tile each parent exactly.
  const IntervalHierarchy fine = build_hierarchy(cf, n + 1);
  const long a_next = cf.quotient(n + 1);
  for (const auto& parent : h.intervals) {
    CAPTURE(n);
    CAPTURE(parent.family);
    CAPTURE(parent.index.get_str());
    std::vector<const SymbolicInterval*> kids;
    kids.push_back(&find_interval(fine, parent.index));
    const long blocks = parent.family == 'I' ? a_next : a_next - 1;
    for (long b = 1; b <= blocks; ++b)
      kids.push_back(&find_interval(fine, parent.index + b * c.q[n]));
    mpz_class lo = kids[0]->lo_index, hi = kids[0]->hi_index;
    for (const auto* kid : kids) {
      CAPTURE(kid->index.get_str());
      CHECK(cmp_idx(cf, parent.lo_index, kid->lo_index) <= 0);
      CHECK(cmp_idx(cf, kid->hi_index, parent.hi_index) <= 0);
      if (cmp_idx(cf, kid->lo_index, lo) < 0) lo = kid->lo_index;
      if (cmp_idx(cf, kid->hi_index, hi) > 0) hi = kid->hi_index;
    }
    CHECK(lo == parent.lo_index);
    CHECK(hi == parent.hi_index);
  }
}

}  // namespace

TEST_CASE("interval hierarchy: disjointness, membership, nesting") {
  for (std::size_t n = 2; n <= 6; ++n) check_level(fib(), n);
  const ContinuedFraction mixed = ContinuedFraction::parse("1,1,1,3,2,(1)*");
  for (std::size_t n = 2; n <= 5; ++n) check_level(mixed, n);
}

TEST_CASE("quotient-one levels alias J intervals to finer I intervals") {
  const ContinuedFraction cf = fib();
  const std::size_t n = 5;
  const Convergents c = convergents(cf, n + 2);
  const IntervalHierarchy h = build_hierarchy(cf, n);
  const IntervalHierarchy fine = build_hierarchy(cf, n + 1);
  for (const auto& iv : h.intervals) {
    if (iv.family != 'J') continue;
    const SymbolicInterval& alias = find_interval(fine, iv.index);
    CHECK(alias.family == 'I');
    CHECK(alias.lo_index == iv.lo_index);
    CHECK(alias.hi_index == iv.hi_index);
  }
  CHECK(c.q[n] > 0);
}

TEST_CASE("sign-matched translates trap their hierarchy interval") {
  const ContinuedFraction cf = fib();
  const std::size_t n = 5;
  const Convergents c = convergents(cf, n + 2);
  const IntervalHierarchy h = build_hierarchy(cf, n);
  int tested = 0;
  for (mpz_class i = 2; i < c.q[n]; ++i)
    for (mpz_class j = 1; j < i; ++j) {
      bool matched = true;
      for (mpz_class k = 1; k <= j && matched; ++k)
        matched = sign_of(k, cf) == sign_of(i - j + k, cf);
      if (!matched) continue;
      ++tested;
      const SymbolicInterval& home = find_interval(h, j);
      const mpz_class other =
          home.lo_index == j ? home.hi_index : home.lo_index;
      CHECK(cmp_idx(cf, other, i) * cmp_idx(cf, other, j) == -1);
    }
  CHECK(tested > 0);
}

TEST_CASE("order-realized orbits satisfy the recurrence conditions") {
  const ContinuedFraction cf = fib();
  const Convergents c = convergents(cf, 7);
  const std::size_t count = c.q[7].get_ui() + 2;
  const std::vector<CertifiedReal> values = order_realized_orbit(cf, count);
  CHECK(verify_recurrence(values, cf, 7).passed());
  CHECK(verify_recurrence(values, cf, 3).passed());

  const ContinuedFraction mixed = ContinuedFraction::parse("1,1,1,3,2,(1)*");
  const Convergents cm = convergents(mixed, 5);
  const std::vector<CertifiedReal> vm =
      order_realized_orbit(mixed, cm.q[5].get_ui() + 2);
  CHECK(verify_recurrence(vm, mixed, 5).passed());
}

TEST_CASE("recurrence verdicts localize failures") {
  const ContinuedFraction cf = fib();
  const Convergents c = convergents(cf, 7);
  const std::size_t count = c.q[7].get_ui() + 2;

  std::vector<CertifiedReal> broken = order_realized_orbit(cf, count);
  std::swap(broken[14], broken[2]);  // garble |x_13| = |x_{q_6}|
  const RecurrenceVerdict v = verify_recurrence(broken, cf, 7);
  CHECK(v.outcome == RecurrenceOutcome::fail);
  CHECK(v.level == 7);
  CHECK(v.clause == 2);

  std::vector<CertifiedReal> fuzzy = order_realized_orbit(cf, count);
  fuzzy[2] = CertifiedReal::of_rational_pair(mpq_class(-1), mpq_class(1), 64);
  CHECK(verify_recurrence(fuzzy, cf, 7).outcome ==
        RecurrenceOutcome::indeterminate);

  CHECK_THROWS_AS(verify_recurrence(broken, cf, 9), std::invalid_argument);
}
