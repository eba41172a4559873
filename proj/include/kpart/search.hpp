#pragma once

// Exhaustive searches over the intersection graph of k-partitions at tiny
// scale: maximal closure, exact maximum t-intersecting families, all maximal
// non-trivial families and isomorphism of families.

#include <cstdint>
#include <optional>
#include <vector>

#include "kpart/bignum.hpp"
#include "kpart/family.hpp"
#include "kpart/verdict.hpp"

namespace kpart {

inline constexpr std::uint64_t kDefaultCliqueBudget = 1000;
inline constexpr int kDefaultIsomorphismBudget = 10;
inline constexpr std::size_t kDefaultWitnessCap = 20;

/// Vertices are the k-partitions of [n] in rgs order; edges join pairs
/// sharing at least t blocks.
class IntersectionGraph {
 public:
  /// Throws BudgetExceeded when S(n,k) > budget.
  IntersectionGraph(const GroundParams& p, std::uint64_t budget = kDefaultCliqueBudget);

  const GroundParams& params() const { return params_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<SetPartition>& vertices() const { return vertices_; }
  bool adjacent(std::size_t a, std::size_t b) const { return (adj_[a][b / 64] >> (b % 64)) & 1U; }
  const std::vector<std::uint64_t>& neighbours(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const;
  std::optional<std::size_t> index_of(const SetPartition& p) const;
  Family family_of(const std::vector<std::size_t>& clique) const;

 private:
  GroundParams params_;
  std::vector<SetPartition> vertices_;
  std::vector<std::vector<std::uint64_t>> adj_;
};

/// Adds, pass after pass over all k-partitions in rgs order, every partition
/// that keeps the family t-intersecting; stops after a pass adds nothing.
/// Throws std::invalid_argument if f0 is not t-intersecting and
/// BudgetExceeded above the enumeration budget.
Family maximal_closure(const Family& f0, std::uint64_t budget = 10'000'000);

struct SearchResult {
  GroundParams params;
  BigCount max_size;
  /// Up to the witness cap, in canonical order.
  std::vector<Family> witnesses;
  /// Number of maximum families found.
  std::uint64_t witness_count = 0;
  bool threshold_met = false;
  /// max_size == S(n-t, k-t) and every maximum family is a star of t singletons.
  bool matches_star = false;
  bool all_witnesses_singleton_stars = false;
};

/// Exact maximum t-intersecting family by branch and bound (greedy colouring
/// bound, vertices by descending degree). Throws BudgetExceeded when
/// S(n,k) exceeds the clique budget.
SearchResult max_family(const GroundParams& p, std::uint64_t budget = kDefaultCliqueBudget,
                        std::size_t witness_cap = kDefaultWitnessCap);

/// A star of t singletons: all members contain the same t singleton blocks
/// and the family is the whole star.
bool is_singleton_star(const Family& f);

struct NontrivialFamilyCheck {
  Family family;
  /// Blocks lying in at least t+1 members; Z when the family is A(Z).
  std::optional<PartialPartition> z;
  bool equals_alpha = false;
  bool closure_stable = false;
};

struct NontrivialSearchResult {
  GroundParams params;
  /// All maximal t-intersecting families, trivial ones included.
  std::uint64_t maximal_count = 0;
  std::vector<NontrivialFamilyCheck> families;
  /// For k = t+2: every family equals A(Z) and has t+2 members. Always true
  /// (vacuously) for other k, where no classification is claimed.
  bool classification_holds = true;
};

/// Every maximal non-trivial t-intersecting family, from a Bron-Kerbosch
/// enumeration of all maximal cliques of the intersection graph.
NontrivialSearchResult enumerate_maximal_nontrivial(const GroundParams& p,
                                                    std::uint64_t budget = kDefaultCliqueBudget);

/// Whether some permutation of [n] maps f1 onto f2. Throws BudgetExceeded
/// when n exceeds the isomorphism budget.
bool isomorphic(const Family& f1, const Family& f2, int budget = kDefaultIsomorphismBudget);

/// Among stars S(X) with |X| = t, the largest non-empty size below
/// S(n-t, k-t) is S(n-t-1, k-t), reached exactly by t-1 singletons plus one
/// doubleton. Sizes are cross-checked by enumeration when S(n,k) <= budget.
VerdictRecord second_largest_trivial_check(const GroundParams& p, std::uint64_t budget = 10'000'000);

}  // namespace kpart
