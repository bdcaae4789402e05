#include "thetarec/certified_real.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>
#include <vector>

namespace thetarec {

namespace {

mpfr_prec_t join_prec(const CertifiedReal& a, const CertifiedReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

CertifiedReal::CertifiedReal(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedReal::CertifiedReal(const CertifiedReal& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& o) {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& o) noexcept {
  prec_ = o.prec_;
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::exact(long v, mpfr_prec_t prec) {
  CertifiedReal r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::exact(const mpz_class& v, mpfr_prec_t prec) {
  CertifiedReal r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::of_rational(const mpq_class& v, mpfr_prec_t prec) {
  CertifiedReal r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::of_rational_pair(const mpq_class& lo,
                                              const mpq_class& hi,
                                              mpfr_prec_t prec) {
  if (lo > hi) throw std::invalid_argument("of_rational_pair: lo > hi");
  CertifiedReal r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::of_midrad(const mpq_class& mid,
                                       const mpq_class& rad,
                                       mpfr_prec_t prec) {
  if (rad < 0) throw std::invalid_argument("of_midrad: negative radius");
  mpq_class lo = mid - rad;
  mpq_class hi = mid + rad;
  return of_rational_pair(lo, hi, prec);
}

CertifiedReal CertifiedReal::hull(const CertifiedReal& a,
                                  const CertifiedReal& b) {
  CertifiedReal r(join_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::interval_min(const CertifiedReal& a,
                                          const CertifiedReal& b) {
  CertifiedReal r(join_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::interval_max(const CertifiedReal& a,
                                          const CertifiedReal& b) {
  CertifiedReal r(join_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::at_precision(mpfr_prec_t prec) const {
  CertifiedReal r(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::add(const CertifiedReal& o) const {
  CertifiedReal r(join_prec(*this, o));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sub(const CertifiedReal& o) const {
  CertifiedReal r(join_prec(*this, o));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::mul(const CertifiedReal& o) const {
  CertifiedReal r(join_prec(*this, o));
  const int alo = mpfr_sgn(lo_), ahi = mpfr_sgn(hi_);
  const int blo = mpfr_sgn(o.lo_), bhi = mpfr_sgn(o.hi_);
  if (alo >= 0) {
    if (blo >= 0) {
      mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    } else if (bhi <= 0) {
      mpfr_mul(r.lo_, hi_, o.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, lo_, o.hi_, MPFR_RNDU);
    } else {
      mpfr_mul(r.lo_, hi_, o.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    }
  } else if (ahi <= 0) {
    if (blo >= 0) {
      mpfr_mul(r.lo_, lo_, o.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, hi_, o.lo_, MPFR_RNDU);
    } else if (bhi <= 0) {
      mpfr_mul(r.lo_, hi_, o.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    } else {
      mpfr_mul(r.lo_, lo_, o.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    }
  } else {
    if (blo >= 0) {
      mpfr_mul(r.lo_, lo_, o.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    } else if (bhi <= 0) {
      mpfr_mul(r.lo_, hi_, o.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    } else {
      mpfr_t t;
      mpfr_init2(t, r.prec_);
      mpfr_mul(r.lo_, lo_, o.hi_, MPFR_RNDD);
      mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
      mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
      mpfr_clear(t);
    }
  }
  return r;
}

CertifiedReal CertifiedReal::div(const CertifiedReal& o) const {
  const int blo = mpfr_sgn(o.lo_), bhi = mpfr_sgn(o.hi_);
  if (blo <= 0 && bhi >= 0)
    throw std::domain_error("div: divisor interval contains zero");
  CertifiedReal r(join_prec(*this, o));
  if (blo > 0) {
    mpfr_div(r.lo_, lo_, mpfr_sgn(lo_) >= 0 ? o.hi_ : o.lo_, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, mpfr_sgn(hi_) >= 0 ? o.lo_ : o.hi_, MPFR_RNDU);
  } else {
    mpfr_div(r.lo_, hi_, mpfr_sgn(hi_) >= 0 ? o.hi_ : o.lo_, MPFR_RNDD);
    mpfr_div(r.hi_, lo_, mpfr_sgn(lo_) >= 0 ? o.lo_ : o.hi_, MPFR_RNDU);
  }
  return r;
}

CertifiedReal CertifiedReal::sqr() const {
  CertifiedReal r(prec_);
  const int slo = mpfr_sgn(lo_), shi = mpfr_sgn(hi_);
  if (slo >= 0) {
    mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
  } else if (shi <= 0) {
    mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
    mpfr_sqr(t, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
  }
  return r;
}

CertifiedReal CertifiedReal::neg() const {
  CertifiedReal r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::abs_val() const {
  CertifiedReal r(prec_);
  const int slo = mpfr_sgn(lo_), shi = mpfr_sgn(hi_);
  if (slo >= 0) return *this;
  if (shi <= 0) return neg();
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sqrt_val() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of negative interval");
  CertifiedReal r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::log_val() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of non-positive interval");
  CertifiedReal r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::exp_val() const {
  CertifiedReal r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::pow_val(const mpq_class& e) const {
  CertifiedReal le = log_val();
  CertifiedReal ee = of_rational(e, prec_);
  return le.mul(ee).exp_val();
}

CertifiedReal CertifiedReal::mul_2si(long e) const {
  CertifiedReal r(prec_);
  mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::add_z(const mpz_class& v) const {
  CertifiedReal r(prec_);
  mpfr_add_z(r.lo_, lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(r.hi_, hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sub_z(const mpz_class& v) const {
  CertifiedReal r(prec_);
  mpfr_sub_z(r.lo_, lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(r.hi_, hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::mul_z(const mpz_class& v) const {
  CertifiedReal r(prec_);
  if (mpz_sgn(v.get_mpz_t()) >= 0) {
    mpfr_mul_z(r.lo_, lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, hi_, v.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_, hi_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, lo_, v.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

CertifiedReal CertifiedReal::add_l(long v) const {
  CertifiedReal r(prec_);
  mpfr_add_si(r.lo_, lo_, v, MPFR_RNDD);
  mpfr_add_si(r.hi_, hi_, v, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::mul_l(long v) const {
  return mul_z(mpz_class(v));
}

Cmp CertifiedReal::cmp(const CertifiedReal& a, const CertifiedReal& b) {
  if (a.is_point() && b.is_point() && mpfr_equal_p(a.lo_, b.lo_))
    return Cmp::equal;
  if (mpfr_less_p(a.hi_, b.lo_)) return Cmp::less;
  if (mpfr_greater_p(a.lo_, b.hi_)) return Cmp::greater;
  return Cmp::indeterminate;
}

Cmp CertifiedReal::cmp_q(const mpq_class& v) const {
  const int chi = mpfr_cmp_q(hi_, v.get_mpq_t());
  const int clo = mpfr_cmp_q(lo_, v.get_mpq_t());
  if (is_point() && clo == 0) return Cmp::equal;
  if (chi < 0) return Cmp::less;
  if (clo > 0) return Cmp::greater;
  return Cmp::indeterminate;
}

std::optional<int> CertifiedReal::certified_sign() const {
  const int slo = mpfr_sgn(lo_), shi = mpfr_sgn(hi_);
  if (slo > 0) return 1;
  if (shi < 0) return -1;
  if (slo == 0 && shi == 0) return 0;
  return std::nullopt;
}

bool CertifiedReal::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool CertifiedReal::is_point() const { return mpfr_equal_p(lo_, hi_); }

mpz_class CertifiedReal::round_mid() const {
  mpfr_t mid;
  mpfr_init2(mid, prec_);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2si(mid, mid, 1, MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), mid, MPFR_RNDN);
  mpfr_clear(mid);
  return z;
}

bool CertifiedReal::radius_leq_2exp(long e) const {
  mpfr_t w, b;
  mpfr_init2(w, prec_);
  mpfr_init2(b, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_set_si(b, 1, MPFR_RNDN);
  mpfr_mul_2si(b, b, e + 1, MPFR_RNDD);  // diameter bound 2 * 2^e
  const bool ok = mpfr_lessequal_p(w, b);
  mpfr_clear(w);
  mpfr_clear(b);
  return ok;
}

std::string CertifiedReal::radius_str() const {
  mpfr_t r;
  mpfr_init2(r, 64);
  mpfr_sub(r, hi_, lo_, MPFR_RNDU);
  mpfr_div_2si(r, r, 1, MPFR_RNDU);
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.3Re", r);
  mpfr_clear(r);
  return buf;
}

double CertifiedReal::mid_double() const {
  mpfr_t mid;
  mpfr_init2(mid, prec_);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2si(mid, mid, 1, MPFR_RNDN);
  const double d = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return d;
}

std::string CertifiedReal::str(int digits) const {
  mpfr_t mid;
  mpfr_init2(mid, prec_);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2si(mid, mid, 1, MPFR_RNDN);
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, mid);
  mpfr_clear(mid);
  return std::string(buf.data()) + " +/- " + radius_str();
}

}  // namespace thetarec
