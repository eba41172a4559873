#pragma once

// The extremal family constructions: stars S(X), the (t+1)-of-(t+2) families
// A(Z) and the Hilton-Milner type families H(X, M), together with their
// exact size formulas.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kpart/bignum.hpp"
#include "kpart/family.hpp"
#include "kpart/partition.hpp"

namespace kpart {

enum class FamilyKind { Star, Alpha, HM };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Implicit descriptor of a construction. `anchor` is X for stars, Z for
/// alpha families and M for HM families; `core` is X for HM families and
/// empty otherwise.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Star;
  GroundParams params;
  PartialPartition anchor;
  PartialPartition core;

  static FamilySpec star(GroundParams p, PartialPartition x);
  static FamilySpec alpha(GroundParams p, PartialPartition z);
  static FamilySpec hm(GroundParams p, PartialPartition x, PartialPartition m);

  /// S([[t]]).
  static FamilySpec named_star(GroundParams p);
  /// A(n,k,t) = A([[t+2]]).
  static FamilySpec named_alpha(GroundParams p);
  /// H(n,k,t) = H([[t]], [[k]]).
  static FamilySpec named_hm(GroundParams p);
  /// H1(n,k,t) = H([[t]], [[k-1]] + {{k, k+1}}); needs n >= k+1.
  static FamilySpec named_h1(GroundParams p);

  /// Throws std::invalid_argument when the anchors do not fit the kind.
  void validate() const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

bool member_star(const FamilySpec& spec, const SetPartition& f);
bool member_alpha(const FamilySpec& spec, const SetPartition& f);
bool member_hm(const FamilySpec& spec, const SetPartition& f);
/// Dispatches on spec.kind.
bool is_member(const FamilySpec& spec, const SetPartition& f);

/// The t exceptional members (M \ {B}) + {B ∪ complement(∪M)}, B in X. When
/// ∪M = [n] each of them is M itself, so a single partition is returned.
std::vector<SetPartition> hm_exceptional_members(const FamilySpec& spec);

/// All k-partitions of [n] accepted by `keep`, enumerated over prefix ranges
/// on `workers` threads. Throws BudgetExceeded when S(n,k) > budget.
Family materialize_if(const GroundParams& p, const std::function<bool(const SetPartition&)>& keep,
                      std::uint64_t budget = kDefaultEnumerationBudget, int workers = 1);
Family materialize(const FamilySpec& spec, std::uint64_t budget = kDefaultEnumerationBudget, int workers = 1);

// --- closed forms ---------------------------------------------------------

/// |S(X)| = S(n - |∪X|, k - t).
BigCount size_star(const FamilySpec& spec);
/// |A(n,k,t)| = (t+2) S(n-t-1, k-t-1) - (t+1) S(n-t-2, k-t-2).
BigCount size_alpha_named(long n, long k, long t);
/// |A(Z)| = sum_{B in Z} S(n - |∪Z| + |B|, k-t-1) - (t+1) S(n - |∪Z|, k-t-2).
BigCount size_alpha_general(const FamilySpec& spec);
/// |H(n,k,t)| = sum_{j=1}^{k-t} (-1)^{j-1} C(k-t, j) S(n-t-j, k-t-j) + t. Valid for n >= k+1.
BigCount size_hm_named(long n, long k, long t);
/// |H1(n,k,t)| by inclusion-exclusion. Valid for n >= k+2.
BigCount size_h1(long n, long k, long t);
/// |H(X, M)| for any anchors: inclusion-exclusion over the blocks of M \ X,
/// plus t exceptional members when ∪M is a proper subset of [n].
BigCount size_hm_general(const FamilySpec& spec);
/// The closed form matching the spec: size_star, size_alpha_general, or for
/// HM families size_hm_named / size_h1 on their shapes and size_hm_general
/// otherwise.
BigCount closed_form_size(const FamilySpec& spec);
/// Name of the formula closed_form_size picks ("star", "alpha", "hm", "h1", "hm-general").
std::string closed_form_name(const FamilySpec& spec);

/// r(n,k,t) = |H(n,k,t)| - S(n-t-1, k-t-1) + S(n-t-2, k-t-1).
BigCount r_value(long n, long k, long t);
/// (k-t+1)^{m-t} C(m,t) S(n-m, k-m) for t <= m <= k-1 and (k-t+1)^{k-t} C(k,t) for m = k.
BigCount f_value(long m, long k, long t, long n);
/// (k-t-2) S(n-t-1, k-t-1) + 2 S(n-t-2, k-t-1) + 2t.
BigCount u1(long n, long k, long t);
/// sum_{j=1}^{3} (-1)^{j-1} C(k-t-1, j) S(n-t-j, k-t-j) + S(n-t-3, k-t-1) + 2t.
BigCount u2(long n, long k, long t);

// --- anchor shapes ----------------------------------------------------------

/// Non-decreasing sequences of `parts` positive integers with sum <= max_total.
std::vector<std::vector<int>> size_profiles(int parts, int max_total);
/// Blocks of the given sizes laid out consecutively from element `first`.
std::vector<Block> consecutive_blocks(const std::vector<int>& sizes, int first = 1);

/// Every construction spec at p whose anchor leaves room for the remaining
/// blocks (|∪anchor| <= n - k + |anchor|), one per block-size profile.
std::vector<FamilySpec> anchor_shape_specs(const GroundParams& p);

}  // namespace kpart
