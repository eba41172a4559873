#include "kpart/family.hpp"

#include <algorithm>

namespace kpart {

Family::Family(GroundParams params, std::vector<SetPartition> members)
    : params_(params), members_(std::move(members)) {
  for (const SetPartition& m : members_) {
    if (m.n() != params_.n || m.k() != params_.k) {
      throw std::invalid_argument("member " + to_string(m) + " is not a " + std::to_string(params_.k) +
                                  "-partition of [" + std::to_string(params_.n) + "]");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Family::has_member(const SetPartition& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

PartialPartition common_core(const Family& f) {
  if (f.empty()) {
    return PartialPartition(f.params().n, {});
  }
  std::vector<Block> core(f.members().front().blocks().begin(), f.members().front().blocks().end());
  for (const SetPartition& m : f) {
    std::erase_if(core, [&](Block b) { return !m.has_block(b); });
    if (core.empty()) break;
  }
  return PartialPartition(f.params().n, std::move(core));
}

bool is_t_intersecting(const std::vector<SetPartition>& members, int t) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (common_blocks(members[i], members[j]) < t) {
        return false;
      }
    }
  }
  return true;
}

bool is_t_intersecting(const Family& f, int t) {
  if (f.size() < 2) {
    return true;
  }
  if (static_cast<int>(common_core(f).size()) >= t) {
    return true;
  }
  return is_t_intersecting(f.members(), t);
}

}  // namespace kpart
