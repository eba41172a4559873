#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kpart/family.hpp"
#include "kpart/partition.hpp"

namespace kpart {

/// True iff every member of f shares at least t blocks with `cover`.
bool is_t_cover(const PartialPartition& cover, const Family& f, int t);
bool is_t_cover(const PartialPartition& cover, const std::vector<SetPartition>& members, int t);

/// Every inclusion-minimal t-cover of `members` with at most max_blocks
/// blocks, canonically sorted. Cover blocks are drawn from member blocks.
std::vector<PartialPartition> minimal_t_covers(const std::vector<SetPartition>& members, int t, int max_blocks);

enum class CoverShape { Empty, Singleton, CoreT, CoreBelowT, NotTIntersecting };

std::string_view to_string(CoverShape shape);

/// Case split of the family T of (t+1)-block covers.
struct CoverClassification {
  CoverShape shape = CoverShape::Empty;
  /// ∩T, for Singleton / CoreT / CoreBelowT.
  std::optional<PartialPartition> core;
  /// ∪T when its blocks are pairwise disjoint.
  std::optional<PartialPartition> union_blocks;
  /// Blocks of ∪T counted as a set of sets, disjoint or not.
  int union_block_count = 0;
  /// Two covers sharing fewer than t blocks (NotTIntersecting only).
  std::optional<std::pair<PartialPartition, PartialPartition>> witness_pair;
  /// For CoreT: all pairwise intersections equal ∩T, ∪T is a partial
  /// partition and has at most k blocks.
  bool core_structure_ok = true;
};

struct CoverReport {
  int tau = 0;
  PartialPartition witness;
  /// T: every t-cover with t+1 blocks (filled when tau == t+1).
  std::vector<PartialPartition> t_plus_1_covers;
  /// ∩T when T is t-intersecting with |∩T| >= t.
  std::optional<PartialPartition> t_core;
  std::optional<CoverClassification> classification;
};

/// Exact t-covering number. Tries sizes t, t+1, ..., k; the first size with
/// a cover is tau and its canonically smallest cover is the witness. Throws
/// std::invalid_argument for an empty or non-t-intersecting family.
CoverReport covering_number(const Family& f, int t);

/// All (t+1)-block t-covers; throws std::invalid_argument unless tau = t+1.
std::vector<PartialPartition> cover_family_T(const Family& f, int t);

/// Classifies T (as produced by cover_family_T) for block count k.
CoverClassification classify_T(const std::vector<PartialPartition>& covers, int t, int k);

}  // namespace kpart
