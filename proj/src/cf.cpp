#include "thetarec/cf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace thetarec {

namespace {

std::vector<long> parse_int_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty quotient token");
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad quotient: " + tok);
    if (v < 1) throw std::invalid_argument("quotients must be positive");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ContinuedFraction::ContinuedFraction(std::vector<long> prefix)
    : state_(std::make_shared<State>()) {
  for (long a : prefix)
    if (a < 1) throw std::invalid_argument("quotients must be positive");
  state_->terms = std::move(prefix);
}

ContinuedFraction ContinuedFraction::constant_tail(std::vector<long> prefix,
                                                   long value) {
  if (value < 1) throw std::invalid_argument("quotients must be positive");
  ContinuedFraction cf(std::move(prefix));
  cf.state_->gen = [value](std::size_t) { return value; };
  cf.state_->tail_label = "(" + std::to_string(value) + ")*";
  return cf;
}

ContinuedFraction ContinuedFraction::periodic_tail(std::vector<long> prefix,
                                                   std::vector<long> period) {
  if (period.empty()) throw std::invalid_argument("empty period");
  for (long a : period)
    if (a < 1) throw std::invalid_argument("quotients must be positive");
  const std::size_t phase = prefix.size();
  std::ostringstream label;
  label << "(";
  for (std::size_t i = 0; i < period.size(); ++i)
    label << (i ? "," : "") << period[i];
  label << ")*";
  ContinuedFraction cf(std::move(prefix));
  cf.state_->gen = [period, phase](std::size_t i) {
    return period[(i - phase - 1) % period.size()];
  };
  cf.state_->tail_label = label.str();
  return cf;
}

ContinuedFraction ContinuedFraction::with_generator(std::vector<long> prefix,
                                                    Generator gen) {
  ContinuedFraction cf(std::move(prefix));
  cf.state_->gen = std::move(gen);
  return cf;
}

long ContinuedFraction::quotient(std::size_t i) const {
  if (i == 0) throw std::out_of_range("quotient indices are 1-based");
  auto& terms = state_->terms;
  while (terms.size() < i) {
    if (!state_->gen)
      throw std::out_of_range("quotient index past a finite prefix");
    const long v = state_->gen(terms.size() + 1);
    if (v < 1) throw std::invalid_argument("generator produced a_i < 1");
    terms.push_back(v);
  }
  return terms[i - 1];
}

bool ContinuedFraction::can_realize(std::size_t i) const {
  return i >= 1 && (state_->gen || i <= state_->terms.size());
}

std::size_t ContinuedFraction::realized() const {
  return state_->terms.size();
}

bool ContinuedFraction::has_tail() const {
  return static_cast<bool>(state_->gen);
}

bool ContinuedFraction::bounded_by(long bound, std::size_t horizon) const {
  for (std::size_t i = 1; i <= horizon && can_realize(i); ++i)
    if (quotient(i) > bound) return false;
  return true;
}

ContinuedFraction ContinuedFraction::parse(const std::string& text) {
  const std::size_t open = text.find('(');
  if (open == std::string::npos) {
    std::vector<long> terms = parse_int_list(text);
    if (terms.empty()) throw std::invalid_argument("empty quotient list");
    return ContinuedFraction(terms);
  }
  const std::size_t close = text.find(")*");
  if (close == std::string::npos || close + 2 != text.size() || close < open)
    throw std::invalid_argument("tail must end with ')*'");
  std::string head = text.substr(0, open);
  while (!head.empty() && (head.back() == ',' || head.back() == ' '))
    head.pop_back();
  std::vector<long> prefix =
      head.empty() ? std::vector<long>{} : parse_int_list(head);
  std::vector<long> period = parse_int_list(text.substr(open + 1, close - open - 1));
  return period.size() == 1 ? constant_tail(std::move(prefix), period[0])
                            : periodic_tail(std::move(prefix), period);
}

std::string ContinuedFraction::str(std::size_t max_terms) const {
  std::ostringstream out;
  const std::size_t shown = std::min(max_terms, state_->terms.size());
  for (std::size_t i = 0; i < shown; ++i)
    out << (i ? "," : "") << state_->terms[i];
  if (!state_->tail_label.empty()) {
    if (shown) out << ",";
    out << state_->tail_label;
  } else if (state_->gen || shown < state_->terms.size()) {
    out << ",...";
  }
  return out.str();
}

std::vector<mpz_class> Convergents::listed_q() const {
  return std::vector<mpz_class>(q.begin() + static_cast<long>(first_listed()),
                                q.end());
}

Convergents convergents(const ContinuedFraction& cf, std::size_t depth,
                        bool want_q0) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  Convergents c;
  c.p.resize(depth + 1);
  c.q.resize(depth + 1);
  c.p[0] = 0;
  c.q[0] = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    const long a = cf.quotient(n);
    if (n == 1) {
      c.p[1] = 1;
      c.q[1] = a;
    } else {
      c.p[n] = a * c.p[n - 1] + c.p[n - 2];
      c.q[n] = a * c.q[n - 1] + c.q[n - 2];
    }
  }
  c.lists_q0 = want_q0 && cf.quotient(1) > 1;
  return c;
}

ContinuedFraction sigma_shift(const ContinuedFraction& cf) {
  const long a1 = cf.quotient(1);
  std::vector<long> prefix;
  for (std::size_t i = 1; i <= cf.realized(); ++i)
    prefix.push_back(cf.quotient(i));
  if (a1 > 1) {
    prefix[0] = a1 - 1;
    if (!cf.has_tail()) return ContinuedFraction(std::move(prefix));
    return ContinuedFraction::with_generator(
        std::move(prefix), [cf](std::size_t i) { return cf.quotient(i); });
  }
  prefix.erase(prefix.begin());
  if (!cf.has_tail()) {
    if (prefix.empty())
      throw std::invalid_argument("shift of the one-term fraction [1]");
    return ContinuedFraction(std::move(prefix));
  }
  return ContinuedFraction::with_generator(
      std::move(prefix), [cf](std::size_t i) { return cf.quotient(i + 1); });
}

AngleClass classify_angle(const ContinuedFraction& cf, std::size_t horizon,
                          const mpq_class& tau, long bound) {
  if (tau < 0) throw std::invalid_argument("tau must be >= 0");
  AngleClass out;
  out.admissible = cf.can_realize(3) && cf.quotient(1) == 1 &&
                   cf.quotient(2) == 1 && cf.quotient(3) == 1;
  long maxq = 0;
  for (std::size_t i = 1; i <= horizon && cf.can_realize(i); ++i) {
    const long a = cf.quotient(i);
    if (a > maxq) {
      maxq = a;
      out.record_positions.push_back(i);
    }
  }
  out.max_quotient = maxq;
  out.bounded = maxq <= bound;

  // gap > 2^((5+tau) a)  <=>  gap^den > 2^((5 den + num) a), all exact.
  const mpz_class num = tau.get_num();
  const mpz_class den = tau.get_den();
  out.growth_condition_ok = true;
  for (std::size_t k = 0; k + 1 < out.record_positions.size(); ++k) {
    const std::size_t nk = out.record_positions[k];
    const std::size_t nk1 = out.record_positions[k + 1];
    const mpz_class gap(static_cast<unsigned long>(nk1 - nk));
    const long a = cf.quotient(nk1);
    mpz_class shift_z = (5 * den + num) * a;
    if (!shift_z.fits_ulong_p()) {
      // Exponent beyond any realizable gap: condition fails.
      out.growth_condition_ok = false;
      out.growth_violations.push_back(k + 1);
      continue;
    }
    const unsigned long shift = shift_z.get_ui();
    const unsigned long dexp = den.get_ui();
    const std::size_t gap_bits = mpz_sizeinbase(gap.get_mpz_t(), 2);
    bool ok;
    if (shift >= dexp * gap_bits) {
      ok = false;  // 2^shift >= 2^(den * gap_bits) > gap^den
    } else {
      mpz_class lhs;
      mpz_pow_ui(lhs.get_mpz_t(), gap.get_mpz_t(), dexp);
      mpz_class rhs = mpz_class(1) << shift;
      ok = lhs > rhs;
    }
    if (!ok) {
      out.growth_condition_ok = false;
      out.growth_violations.push_back(k + 1);
    }
  }
  return out;
}

CertifiedReal angle_value(const ContinuedFraction& cf,
                          mpfr_prec_t precision_bits) {
  const mpz_class threshold = mpz_class(1) << static_cast<unsigned long>(
                                  precision_bits);
  mpz_class p_prev = 0, q_prev = 1;  // p_0, q_0
  mpz_class p_cur = 1, q_cur = cf.quotient(1);
  std::size_t n = 1;
  while (cf.can_realize(n + 1)) {
    const mpz_class qq = q_cur * (cf.quotient(n + 1) * q_cur + q_prev);
    if (qq >= threshold) break;
    const long a = cf.quotient(n + 1);
    mpz_class p_next = a * p_cur + p_prev;
    mpz_class q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    ++n;
  }
  mpq_class value(p_cur, q_cur);
  value.canonicalize();
  mpq_class radius;
  if (cf.can_realize(n + 1)) {
    radius = mpq_class(1, q_cur * (cf.quotient(n + 1) * q_cur + q_prev));
  } else {
    radius = mpq_class(1, q_cur * (q_cur + q_prev));  // a_{N+1} >= 1
  }
  radius.canonicalize();
  const mpfr_prec_t prec =
      std::max<mpfr_prec_t>(precision_bits + 64, 128);
  return CertifiedReal::of_midrad(value, radius, prec);
}

}  // namespace thetarec
