#pragma once

#include <gmpxx.h>

#include <string>

namespace kpart {

/// Exact non-negative counts (Stirling numbers, family sizes). Formula
/// evaluation may pass through negative intermediates, so the type is signed.
using BigCount = mpz_class;

/// Exact rational, always kept in lowest terms with a positive denominator.
using BigRatio = mpq_class;

BigCount binomial(long n, long k);
BigCount factorial(long n);
BigCount power(const BigCount& base, unsigned long exp);
BigCount power(long base, unsigned long exp);
BigRatio power(const BigRatio& base, unsigned long exp);

std::string to_string(const BigCount& value);
std::string to_string(const BigRatio& value);

/// Builds a canonical ratio from numerator and denominator.
BigRatio make_ratio(const BigCount& num, const BigCount& den);

}  // namespace kpart
