#pragma once

// Closed intervals with MPFR endpoints rounded outward, for the few
// comparisons that involve irrational logarithms.

#include <mpfr.h>

#include <string>

#include "kpart/bignum.hpp"

namespace kpart {

class Interval {
 public:
  explicit Interval(mpfr_prec_t precision);
  /// Encloses q at the given precision (a point when q is representable).
  Interval(const BigRatio& q, mpfr_prec_t precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);

  /// Throws std::domain_error unless the interval is positive.
  Interval log2() const;

  /// "[lo, hi]" with `digits` significant decimal digits, rounded outward.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Encloses log2 Q(s,t) with Q(s,t) = s^{L(s+t,t) - 2s - t + 1} / C(s+t, t),
/// computed as (2 - 2s + (s+1) log2((t+1)(s+1))) log2 s - log2 C(s+t, t).
Interval log2_q(long s, long t, mpfr_prec_t precision);

/// Q(s,t) exactly when s is a power of two; needs s >= 2, t >= 1.
BigRatio q_exact(long s, long t);

}  // namespace kpart
