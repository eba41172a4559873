#pragma once

// Brute-force references built from the definitions with std::set, sharing
// no code with the library beyond converting to and from its types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "kpart/partition.hpp"

namespace oracle {

using Set = std::set<int>;
using Parts = std::set<Set>;

/// All partitions of [n] into exactly k blocks, by inserting 1..n one at a
/// time into an existing block or a new one.
inline std::vector<Parts> partitions(int n, int k) {
  std::vector<std::vector<Set>> frontier{{}};
  for (int e = 1; e <= n; ++e) {
    std::vector<std::vector<Set>> next;
    for (const auto& blocks : frontier) {
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto copy = blocks;
        copy[i].insert(e);
        next.push_back(std::move(copy));
      }
      if (static_cast<int>(blocks.size()) < k) {
        auto copy = blocks;
        copy.push_back({e});
        next.push_back(std::move(copy));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Parts> out;
  for (const auto& blocks : frontier)
    if (static_cast<int>(blocks.size()) == k) out.emplace_back(blocks.begin(), blocks.end());
  return out;
}

inline mpz_class factorial(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

inline mpz_class choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

/// Stirling numbers by counting surjections [n] -> [k] and dividing by k!.
inline mpz_class stirling(long n, long k) {
  if (n == 0 && k == 0) return 1;
  if (k <= 0 || k > n) return 0;
  mpz_class surj = 0;
  for (long j = 0; j <= k; ++j) {
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(k - j), static_cast<unsigned long>(n));
    term *= choose(k, j);
    if (j % 2 == 0)
      surj += term;
    else
      surj -= term;
  }
  return surj / factorial(k);
}

inline Set elements(kpart::Block b) {
  auto v = b.elements();
  return Set(v.begin(), v.end());
}

inline Parts parts(const kpart::SetPartition& p) {
  Parts out;
  for (kpart::Block b : p.blocks()) out.insert(elements(b));
  return out;
}

inline Parts parts(const kpart::PartialPartition& p) {
  Parts out;
  for (kpart::Block b : p.blocks()) out.insert(elements(b));
  return out;
}

inline kpart::SetPartition to_partition(int n, const Parts& p) {
  std::vector<kpart::Block> blocks;
  for (const Set& s : p) blocks.push_back(kpart::Block::of(std::vector<int>(s.begin(), s.end())));
  return kpart::SetPartition(n, std::move(blocks));
}

inline int common(const Parts& a, const Parts& b) {
  int c = 0;
  for (const Set& s : a) c += static_cast<int>(b.count(s));
  return c;
}

inline bool subset(const Parts& small, const Parts& big) {
  return std::all_of(small.begin(), small.end(), [&](const Set& s) { return big.count(s) > 0; });
}

inline bool star(const Parts& x, const Parts& f) { return subset(x, f); }

inline bool alpha(const Parts& z, int t, const Parts& f) { return common(z, f) >= t + 1; }

/// H(X, M): contains X and meets M \ X, or is (M \ {B}) + {B ∪ (complement of ∪M)}.
inline bool hm(const Parts& x, const Parts& m, int n, const Parts& f) {
  Parts rest;
  for (const Set& s : m)
    if (!x.count(s)) rest.insert(s);
  if (subset(x, f) && common(rest, f) > 0) return true;
  Set outside;
  for (int e = 1; e <= n; ++e) outside.insert(e);
  for (const Set& s : m)
    for (int e : s) outside.erase(e);
  for (const Set& b : x) {
    Parts exc = m;
    exc.erase(b);
    Set grown = b;
    grown.insert(outside.begin(), outside.end());
    exc.insert(grown);
    if (exc == f) return true;
  }
  return false;
}

inline bool t_intersecting(const std::vector<Parts>& fam, int t) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if (common(fam[i], fam[j]) < t) return false;
  return true;
}

inline bool is_cover(const Parts& cover, const std::vector<Parts>& fam, int t) {
  return std::all_of(fam.begin(), fam.end(), [&](const Parts& f) { return common(cover, f) >= t; });
}

inline bool disjoint(const Parts& p) {
  Set seen;
  for (const Set& s : p)
    for (int e : s)
      if (!seen.insert(e).second) return false;
  return true;
}

/// Every pairwise disjoint j-subset of the member blocks that is a t-cover.
inline std::vector<Parts> covers_of_size(const std::vector<Parts>& fam, int t, int j) {
  std::set<Set> pool_set;
  for (const Parts& f : fam) pool_set.insert(f.begin(), f.end());
  std::vector<Set> pool(pool_set.begin(), pool_set.end());
  std::vector<Parts> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == j) {
      Parts c;
      for (std::size_t i : pick) c.insert(pool[i]);
      if (disjoint(c) && is_cover(c, fam, t)) out.push_back(c);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

inline int covering_number(const std::vector<Parts>& fam, int t, int k) {
  for (int j = t; j <= k; ++j)
    if (!covers_of_size(fam, t, j).empty()) return j;
  return -1;
}

/// Size of the largest t-intersecting subfamily of `all`, by plain
/// include/exclude recursion with a size cut.
inline std::size_t max_clique(const std::vector<Parts>& all, int t) {
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (chosen.size() + (all.size() - i) <= best) return;
    if (i == all.size()) {
      best = chosen.size();
      return;
    }
    bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return common(all[c], all[i]) >= t; });
    if (ok) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  rec(0);
  return best;
}

/// |A_1 ∪ ... ∪ A_m| directly.
inline std::size_t union_size(const std::vector<std::uint64_t>& masks) {
  std::uint64_t u = 0;
  for (auto m : masks) u |= m;
  return static_cast<std::size_t>(__builtin_popcountll(u));
}

}  // namespace oracle
