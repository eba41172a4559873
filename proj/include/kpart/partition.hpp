#pragma once

// Set partitions of the ground set [n] = {1, ..., n} with n <= 64. A block
// is one 64-bit mask (element i lives at bit i-1).

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kpart {

inline constexpr int kMaxGround = 64;

/// Raised when an enumeration or search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground-set size n, block count k and intersection threshold t.
struct GroundParams {
  int n = 0;
  int k = 0;
  int t = 0;

  /// Throws std::invalid_argument unless 1 <= t < k <= n <= 64.
  void validate() const;
  friend bool operator==(const GroundParams&, const GroundParams&) = default;
};

class Block {
 public:
  constexpr Block() = default;
  constexpr explicit Block(std::uint64_t mask) : mask_(mask) {}

  /// Block from 1-based elements; throws on elements outside [1, 64].
  static Block of(std::initializer_list<int> elements);
  static Block of(std::span<const int> elements);
  /// The interval {first, ..., last}.
  static Block range(int first, int last);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr int min_element() const { return std::countr_zero(mask_) + 1; }
  constexpr int max_element() const { return 64 - std::countl_zero(mask_); }
  constexpr bool has(int element) const { return (mask_ >> (element - 1)) & 1U; }
  constexpr bool disjoint(Block other) const { return (mask_ & other.mask_) == 0; }
  std::vector<int> elements() const;

  friend constexpr bool operator==(Block, Block) = default;
  /// Lexicographic order of the sorted element lists ({1} < {1,2} < {1,3} < {2}).
  friend std::strong_ordering operator<=>(Block a, Block b);

 private:
  std::uint64_t mask_ = 0;
};

/// Pairwise disjoint non-empty blocks, not necessarily covering [n]. Blocks
/// are kept in increasing order of minimum element.
class PartialPartition {
 public:
  PartialPartition() = default;
  /// Validates and canonicalizes; throws std::invalid_argument on overlapping
  /// or empty blocks and elements outside [n].
  PartialPartition(int n, std::vector<Block> blocks);

  int n() const { return n_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  std::span<const Block> blocks() const { return blocks_; }
  /// Mask of all covered elements.
  std::uint64_t support() const;
  /// Number of covered ground elements (|∪X|).
  int covered() const { return std::popcount(support()); }
  bool has_block(Block b) const;

  friend bool operator==(const PartialPartition&, const PartialPartition&) = default;
  friend std::strong_ordering operator<=>(const PartialPartition& a, const PartialPartition& b);

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

/// A partition of exactly [n] into k blocks, stored both as blocks (by minimum
/// element) and as its restricted growth string.
class SetPartition {
 public:
  SetPartition() = default;
  /// From a restricted growth string; throws if the word is not one.
  explicit SetPartition(std::span<const std::uint8_t> rgs);
  /// From blocks covering [n]; throws if they overlap or miss an element.
  SetPartition(int n, std::vector<Block> blocks);

  int n() const { return static_cast<int>(rgs_.size()); }
  int k() const { return static_cast<int>(blocks_.size()); }
  std::span<const Block> blocks() const { return blocks_; }
  /// Blocks sorted by mask value; the merge order used by common_blocks.
  std::span<const Block> blocks_by_mask() const { return by_mask_; }
  std::span<const std::uint8_t> rgs() const { return rgs_; }
  bool has_block(Block b) const;
  /// The block containing element (1-based).
  Block block_of(int element) const { return blocks_[rgs_[element - 1]]; }
  PartialPartition as_partial() const { return PartialPartition(n(), blocks_); }

  friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.rgs_ == b.rgs_; }
  /// Orders by n, then lexicographically by rgs.
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b);

 private:
  void index_blocks();

  std::vector<std::uint8_t> rgs_;
  std::vector<Block> blocks_;
  std::vector<Block> by_mask_;
};

using Canonical = std::variant<SetPartition, PartialPartition>;

/// Sorts blocks by minimum element and validates them; returns a SetPartition
/// when they cover [n], else a PartialPartition.
Canonical canonicalize(int n, std::vector<Block> blocks);

/// Number of blocks present (as equal sets) in both partitions.
int common_blocks(const SetPartition& p, const SetPartition& q);
/// Number of blocks of `cover` that are blocks of `p`.
int common_blocks(const PartialPartition& cover, const SetPartition& p);
/// Number of blocks shared by two partial partitions.
int common_blocks(const PartialPartition& a, const PartialPartition& b);

/// True iff every block of s is a block of p.
bool contains(const SetPartition& p, const PartialPartition& s);

/// {{i} : i in elements}; throws on an empty mask.
PartialPartition singletons_of(int n, std::uint64_t elements);
/// [[m]] = {{1}, ..., {m}}.
PartialPartition first_singletons(int n, int m);

// Textual literals: "1|2|3 4" (blocks) or "0,1,2,2" (restricted growth string).
std::string to_string(Block b);
std::string to_string(const PartialPartition& p);
std::string to_string(const SetPartition& p);
/// Parses either literal form. Block literals need `n` when they do not cover
/// [max element]; pass n = 0 to infer n from the largest element.
Canonical parse_partition(std::string_view text, int n = 0);
SetPartition parse_set_partition(std::string_view text, int n = 0);
PartialPartition parse_partial(std::string_view text, int n);

}  // namespace kpart
