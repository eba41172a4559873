#pragma once

#include <vector>

#include "kpart/partition.hpp"

namespace kpart {

/// An explicit family of k-partitions of [n]: strictly sorted by rgs, no
/// duplicates.
class Family {
 public:
  Family() = default;
  /// Sorts and deduplicates; throws if a member is not a k-partition of [n].
  Family(GroundParams params, std::vector<SetPartition> members);

  const GroundParams& params() const { return params_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<SetPartition>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  bool has_member(const SetPartition& p) const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  GroundParams params_;
  std::vector<SetPartition> members_;
};

/// Blocks common to every member (empty for an empty family).
PartialPartition common_core(const Family& f);

/// Every pair of members shares at least t blocks. Families whose members
/// all contain t common blocks are accepted without the pairwise scan.
bool is_t_intersecting(const Family& f, int t);
bool is_t_intersecting(const std::vector<SetPartition>& members, int t);

}  // namespace kpart
