#include "kpart/bignum.hpp"

#include <stdexcept>

namespace kpart {

BigCount binomial(long n, long k) {
  BigCount out;
  if (n < 0 || k < 0 || k > n) {
    return out;
  }
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigCount factorial(long n) {
  if (n < 0) {
    throw std::invalid_argument("factorial of a negative number");
  }
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigCount power(const BigCount& base, unsigned long exp) {
  BigCount out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

BigCount power(long base, unsigned long exp) { return power(BigCount(base), exp); }

BigRatio power(const BigRatio& base, unsigned long exp) {
  BigCount num = power(BigCount(base.get_num()), exp);
  BigCount den = power(BigCount(base.get_den()), exp);
  return make_ratio(num, den);
}

std::string to_string(const BigCount& value) { return value.get_str(); }

std::string to_string(const BigRatio& value) { return value.get_str(); }

BigRatio make_ratio(const BigCount& num, const BigCount& den) {
  if (den == 0) {
    throw std::domain_error("zero denominator");
  }
  BigRatio out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace kpart
