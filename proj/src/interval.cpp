#include "kpart/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace kpart {

namespace {

void set_ratio(mpfr_ptr out, const BigRatio& q, mpfr_rnd_t rnd) { mpfr_set_q(out, q.get_mpq_t(), rnd); }

std::string endpoint(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), x, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  if (mpfr_zero_p(x)) return "0";
  std::string sign;
  if (mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(static_cast<long>(exp) - 1);
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const BigRatio& q, mpfr_prec_t precision) : Interval(precision) {
  set_ratio(lo_, q, MPFR_RNDD);
  set_ratio(hi_, q, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval(other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(std::max(a.precision(), b.precision()));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(std::max(a.precision(), b.precision()));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval out(prec);
  mpfr_t down, up;
  mpfr_init2(down, prec);
  mpfr_init2(up, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lo_, a.hi_}) {
    for (mpfr_srcptr y : {b.lo_, b.hi_}) {
      mpfr_mul(down, x, y, MPFR_RNDD);
      mpfr_mul(up, x, y, MPFR_RNDU);
      if (first || mpfr_less_p(down, out.lo_)) mpfr_set(out.lo_, down, MPFR_RNDD);
      if (first || mpfr_greater_p(up, out.hi_)) mpfr_set(out.hi_, up, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(down);
  mpfr_clear(up);
  return out;
}

Interval Interval::log2() const {
  if (!positive()) throw std::domain_error("log2 of an interval that is not positive");
  Interval out(precision());
  mpfr_log2(out.lo_, lo_, MPFR_RNDD);
  mpfr_log2(out.hi_, hi_, MPFR_RNDU);
  return out;
}

std::string Interval::to_string(int digits) const {
  return "[" + endpoint(lo_, digits, MPFR_RNDD) + ", " + endpoint(hi_, digits, MPFR_RNDU) + "]";
}

Interval log2_q(long s, long t, mpfr_prec_t precision) {
  if (s < 2 || t < 1) throw std::invalid_argument("Q(s,t) needs s >= 2 and t >= 1");
  auto exact = [&](const BigRatio& q) { return Interval(q, precision); };
  Interval log_p = exact(BigRatio((t + 1) * (s + 1))).log2();
  Interval a = exact(BigRatio(2 - 2 * s)) + exact(BigRatio(s + 1)) * log_p;
  return a * exact(BigRatio(s)).log2() - exact(BigRatio(binomial(s + t, t))).log2();
}

BigRatio q_exact(long s, long t) {
  if (s < 2 || t < 1 || (s & (s - 1)) != 0) throw std::invalid_argument("q_exact needs s a power of two, s >= 2");
  const unsigned long log_s = static_cast<unsigned long>(__builtin_ctzl(static_cast<unsigned long>(s)));
  BigRatio out = power(BigRatio((t + 1) * (s + 1)), static_cast<unsigned long>(s + 1) * log_s);
  out /= power(BigRatio(s), static_cast<unsigned long>(2 * s - 2));
  out /= BigRatio(binomial(s + t, t));
  out.canonicalize();
  return out;
}

}  // namespace kpart
