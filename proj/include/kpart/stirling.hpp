#pragma once

#include "kpart/bignum.hpp"

namespace kpart {

/// Stirling partition number S(n, k) from the memoized recurrence
/// S(n,k) = S(n-1,k-1) + k S(n-1,k). S(0,0) = 1; every other value with
/// k <= 0, n < 0 or k > n is 0. Thread-safe.
BigCount stirling(long n, long k);

/// (1/k!) sum_{j=0}^{k} (-1)^j C(k,j) (k-j)^n, for n >= k >= 1. Test oracle.
BigCount stirling_explicit(long n, long k);

/// (r^2 + r + 2) r^{n-r-1} / 2 - 1, the lower bound on S(n, r) for 1 <= r < n.
BigRatio rennie_dobson_lower(long n, long r);

/// Checks S(n,k) >= (2^{(n-1)/(k-1)} - 1) S(n-1,k-1) through the exact
/// equivalent (S(n,k)/S(n-1,k-1) + 1)^{k-1} >= 2^{n-1}. Needs n >= k >= 2.
bool ratio_bound_holds(long n, long k);

/// n >= L(k,t) = (t+1) + (k-t+1) log2((t+1)(k-t+1)), decided as
/// 2^{n-t-1} >= ((t+1)(k-t+1))^{k-t+1}. Needs k >= t+2 >= 3.
bool meets_L(long n, long k, long t);
/// n >= 2 L(k,t), decided as 2^{n-2(t+1)} >= ((t+1)(k-t+1))^{2(k-t+1)}.
bool meets_2L(long n, long k, long t);
/// Least n with meets_L(n, k, t).
long min_n_for_L(long k, long t);
/// Least n with meets_2L(n, k, t).
long min_n_for_2L(long k, long t);

/// Largest n for which the memo table is currently filled (for diagnostics).
long stirling_table_rows();

}  // namespace kpart
