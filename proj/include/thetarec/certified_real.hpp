#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace thetarec {

// Outcome of a certified comparison.  indeterminate means the enclosures
// overlap, so no order can be certified at the current precision.
enum class Cmp { less, equal, greater, indeterminate };

// Thrown when a computation cannot certify its result within the configured
// precision budget.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// Real number represented by a closed interval [lo, hi] with outward-rounded
// MPFR endpoints.  Every operation returns an enclosure of the exact result,
// so a certified predicate on the output is a proof about the exact value.
class CertifiedReal {
 public:
  explicit CertifiedReal(mpfr_prec_t prec = 128);
  CertifiedReal(const CertifiedReal& o);
  CertifiedReal(CertifiedReal&& o) noexcept;
  CertifiedReal& operator=(const CertifiedReal& o);
  CertifiedReal& operator=(CertifiedReal&& o) noexcept;
  ~CertifiedReal();

  static CertifiedReal exact(long v, mpfr_prec_t prec = 128);
  static CertifiedReal exact(const mpz_class& v, mpfr_prec_t prec = 128);
  static CertifiedReal of_rational(const mpq_class& v, mpfr_prec_t prec);
  // Encloses [lo, hi]; requires lo <= hi.
  static CertifiedReal of_rational_pair(const mpq_class& lo,
                                        const mpq_class& hi, mpfr_prec_t prec);
  // Encloses mid +/- rad for exact rationals; requires rad >= 0.
  static CertifiedReal of_midrad(const mpq_class& mid, const mpq_class& rad,
                                 mpfr_prec_t prec);
  static CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);
  // Enclosures of min/max of the exact values.
  static CertifiedReal interval_min(const CertifiedReal& a,
                                    const CertifiedReal& b);
  static CertifiedReal interval_max(const CertifiedReal& a,
                                    const CertifiedReal& b);

  mpfr_prec_t precision() const { return prec_; }
  CertifiedReal at_precision(mpfr_prec_t prec) const;

  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  CertifiedReal add(const CertifiedReal& o) const;
  CertifiedReal sub(const CertifiedReal& o) const;
  CertifiedReal mul(const CertifiedReal& o) const;
  CertifiedReal div(const CertifiedReal& o) const;  // requires 0 outside o
  CertifiedReal sqr() const;
  CertifiedReal neg() const;
  CertifiedReal abs_val() const;
  CertifiedReal sqrt_val() const;  // requires lo >= 0
  CertifiedReal log_val() const;   // requires lo > 0
  CertifiedReal exp_val() const;
  CertifiedReal pow_val(const mpq_class& e) const;  // requires lo > 0
  CertifiedReal mul_2si(long e) const;
  CertifiedReal add_z(const mpz_class& v) const;
  CertifiedReal sub_z(const mpz_class& v) const;
  CertifiedReal mul_z(const mpz_class& v) const;
  CertifiedReal add_l(long v) const;
  CertifiedReal mul_l(long v) const;

  // Certified order on exact values.  equal is only reported for two
  // coinciding point intervals.
  static Cmp cmp(const CertifiedReal& a, const CertifiedReal& b);
  // Certified comparison against an exact rational.
  Cmp cmp_q(const mpq_class& v) const;
  std::optional<int> certified_sign() const;  // -1, 0 (exact), +1
  bool contains_zero() const;
  bool is_point() const;  // lo == hi

  // Nearest integer to the midpoint.
  mpz_class round_mid() const;
  // True when the interval radius is certified <= 2^e.
  bool radius_leq_2exp(long e) const;
  // Upper bound on the radius as a decimal string.
  std::string radius_str() const;
  double mid_double() const;
  // "<midpoint> +/- <radius>" with the given number of significant digits.
  std::string str(int digits = 20) const;

  CertifiedReal operator+(const CertifiedReal& o) const { return add(o); }
  CertifiedReal operator-(const CertifiedReal& o) const { return sub(o); }
  CertifiedReal operator*(const CertifiedReal& o) const { return mul(o); }
  CertifiedReal operator/(const CertifiedReal& o) const { return div(o); }
  CertifiedReal operator-() const { return neg(); }

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace thetarec
