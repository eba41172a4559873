#include "kpart/stirling.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpart {

namespace {

// Row n holds S(n, 0..n). Rows are appended under the unique lock and never
// modified afterwards.
struct StirlingTable {
  std::shared_mutex mutex;
  std::vector<std::vector<BigCount>> rows;

  void grow_to(long n) {
    std::unique_lock lock(mutex);
    if (rows.empty()) {
      rows.push_back({BigCount(1)});
    }
    while (static_cast<long>(rows.size()) <= n) {
      const std::vector<BigCount>& prev = rows.back();
      long m = static_cast<long>(rows.size());
      std::vector<BigCount> row(static_cast<std::size_t>(m + 1));
      row[0] = 0;
      for (long k = 1; k <= m; ++k) {
        BigCount carry = prev[static_cast<std::size_t>(k - 1)];
        if (k < m) {
          carry += BigCount(k) * prev[static_cast<std::size_t>(k)];
        }
        row[static_cast<std::size_t>(k)] = std::move(carry);
      }
      rows.push_back(std::move(row));
    }
  }
};

StirlingTable& table() {
  static StirlingTable instance;
  return instance;
}

void require_L_params(long k, long t) {
  if (t < 1 || k < t + 2) {
    throw std::invalid_argument("threshold L(k,t) needs k >= t+2 >= 3 (k=" + std::to_string(k) +
                                ", t=" + std::to_string(t) + ")");
  }
}

}  // namespace

BigCount stirling(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    return 0;
  }
  StirlingTable& tab = table();
  {
    std::shared_lock lock(tab.mutex);
    if (static_cast<long>(tab.rows.size()) > n) {
      return tab.rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
  }
  tab.grow_to(n);
  std::shared_lock lock(tab.mutex);
  return tab.rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

long stirling_table_rows() {
  std::shared_lock lock(table().mutex);
  return static_cast<long>(table().rows.size()) - 1;
}

BigCount stirling_explicit(long n, long k) {
  if (n < k || k < 1) {
    throw std::invalid_argument("stirling_explicit needs n >= k >= 1");
  }
  BigCount sum = 0;
  for (long j = 0; j <= k; ++j) {
    BigCount term = binomial(k, j) * power(k - j, static_cast<unsigned long>(n));
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  BigCount fact = factorial(k);
  if (sum % fact != 0) {
    throw std::logic_error("alternating sum not divisible by k!");
  }
  return sum / fact;
}

BigRatio rennie_dobson_lower(long n, long r) {
  if (r < 1 || r >= n) {
    throw std::invalid_argument("rennie_dobson_lower needs 1 <= r < n");
  }
  BigCount num = BigCount(r * r + r + 2) * power(r, static_cast<unsigned long>(n - r - 1));
  return make_ratio(num, 2) - 1;
}

bool ratio_bound_holds(long n, long k) {
  if (k < 2 || n < k) {
    throw std::invalid_argument("ratio_bound_holds needs n >= k >= 2");
  }
  BigRatio ratio = make_ratio(stirling(n, k), stirling(n - 1, k - 1)) + 1;
  return power(ratio, static_cast<unsigned long>(k - 1)) >= BigRatio(power(2, static_cast<unsigned long>(n - 1)));
}

bool meets_L(long n, long k, long t) {
  require_L_params(k, t);
  long exp2 = n - t - 1;
  if (exp2 < 0) {
    return false;
  }
  BigCount base = BigCount((t + 1) * (k - t + 1));
  return power(2, static_cast<unsigned long>(exp2)) >= power(base, static_cast<unsigned long>(k - t + 1));
}

bool meets_2L(long n, long k, long t) {
  require_L_params(k, t);
  long exp2 = n - 2 * (t + 1);
  if (exp2 < 0) {
    return false;
  }
  BigCount base = BigCount((t + 1) * (k - t + 1));
  return power(2, static_cast<unsigned long>(exp2)) >= power(base, static_cast<unsigned long>(2 * (k - t + 1)));
}

long min_n_for_L(long k, long t) {
  require_L_params(k, t);
  long n = t + 1;
  while (!meets_L(n, k, t)) ++n;
  return n;
}

long min_n_for_2L(long k, long t) {
  require_L_params(k, t);
  long n = 2 * (t + 1);
  while (!meets_2L(n, k, t)) ++n;
  return n;
}

}  // namespace kpart
