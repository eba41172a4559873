#include "kpart/covers.hpp"

#include <algorithm>
#include <set>

namespace kpart {

namespace {

// Branches on the blocks of the first member that is still short of t shared
// blocks; every cover contains one of them, so the search is complete for
// inclusion-minimal covers.
class CoverSearch {
 public:
  CoverSearch(const std::vector<SetPartition>& members, int t, int max_blocks)
      : members_(members), t_(t), max_blocks_(max_blocks) {}

  std::vector<PartialPartition> run(int n) {
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<Block> chosen;
    search(chosen, seen);
    std::vector<PartialPartition> out;
    for (const auto& masks : seen) {
      std::vector<Block> blocks;
      for (std::uint64_t m : masks) blocks.emplace_back(m);
      out.emplace_back(n, std::move(blocks));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int shared(const SetPartition& m, const std::vector<Block>& chosen) const {
    int c = 0;
    for (Block b : chosen) c += m.has_block(b) ? 1 : 0;
    return c;
  }

  void search(std::vector<Block>& chosen, std::set<std::vector<std::uint64_t>>& seen) {
    const SetPartition* deficient = nullptr;
    int deficit = 0;
    for (const SetPartition& m : members_) {
      int c = shared(m, chosen);
      if (c < t_) {
        deficient = &m;
        deficit = t_ - c;
        break;
      }
    }
    if (deficient == nullptr) {
      if (minimal(chosen)) {
        std::vector<std::uint64_t> key;
        for (Block b : chosen) key.push_back(b.mask());
        std::sort(key.begin(), key.end());
        seen.insert(std::move(key));
      }
      return;
    }
    if (static_cast<int>(chosen.size()) + deficit > max_blocks_) {
      return;
    }
    std::uint64_t used = 0;
    for (Block b : chosen) used |= b.mask();
    for (Block b : deficient->blocks()) {
      if ((used & b.mask()) != 0) continue;
      chosen.push_back(b);
      search(chosen, seen);
      chosen.pop_back();
    }
  }

  bool minimal(const std::vector<Block>& chosen) const {
    for (std::size_t skip = 0; skip < chosen.size(); ++skip) {
      bool still_cover = true;
      for (const SetPartition& m : members_) {
        int c = 0;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          if (i != skip && m.has_block(chosen[i])) ++c;
        }
        if (c < t_) {
          still_cover = false;
          break;
        }
      }
      if (still_cover) return false;
    }
    return true;
  }

  const std::vector<SetPartition>& members_;
  int t_;
  int max_blocks_;
};

PartialPartition intersect(const PartialPartition& a, const PartialPartition& b) {
  std::vector<Block> out;
  for (Block x : a.blocks()) {
    if (b.has_block(x)) out.push_back(x);
  }
  return PartialPartition(a.n(), std::move(out));
}

}  // namespace

bool is_t_cover(const PartialPartition& cover, const std::vector<SetPartition>& members, int t) {
  return std::all_of(members.begin(), members.end(),
                     [&](const SetPartition& m) { return common_blocks(cover, m) >= t; });
}

bool is_t_cover(const PartialPartition& cover, const Family& f, int t) { return is_t_cover(cover, f.members(), t); }

std::vector<PartialPartition> minimal_t_covers(const std::vector<SetPartition>& members, int t, int max_blocks) {
  if (members.empty()) {
    return {};
  }
  return CoverSearch(members, t, max_blocks).run(members.front().n());
}

std::string_view to_string(CoverShape shape) {
  switch (shape) {
    case CoverShape::Empty:
      return "empty";
    case CoverShape::Singleton:
      return "singleton";
    case CoverShape::CoreT:
      return "core_t";
    case CoverShape::CoreBelowT:
      return "core_below_t";
    case CoverShape::NotTIntersecting:
      return "not_t_intersecting";
  }
  return "?";
}

CoverReport covering_number(const Family& f, int t) {
  if (f.empty()) {
    throw std::invalid_argument("covering number of an empty family");
  }
  if (!is_t_intersecting(f, t)) {
    throw std::invalid_argument("family is not " + std::to_string(t) + "-intersecting");
  }
  const int k = f.params().k;
  CoverReport report;
  for (int size = t; size <= k; ++size) {
    std::vector<PartialPartition> covers;
    for (PartialPartition& c : minimal_t_covers(f.members(), t, size)) {
      if (static_cast<int>(c.size()) == size) covers.push_back(std::move(c));
    }
    if (covers.empty()) continue;
    report.tau = size;
    report.witness = covers.front();
    if (size == t + 1) {
      report.t_plus_1_covers = covers;
      CoverClassification cls = classify_T(covers, t, k);
      if (cls.shape == CoverShape::CoreT) report.t_core = cls.core;
      report.classification = std::move(cls);
    }
    return report;
  }
  // Unreachable for a t-intersecting family: any member is a k-block cover.
  throw std::logic_error("no t-cover with at most k blocks");
}

std::vector<PartialPartition> cover_family_T(const Family& f, int t) {
  CoverReport report = covering_number(f, t);
  if (report.tau != t + 1) {
    throw std::invalid_argument("cover family T needs covering number t+1, got " + std::to_string(report.tau));
  }
  return report.t_plus_1_covers;
}

CoverClassification classify_T(const std::vector<PartialPartition>& covers, int t, int k) {
  CoverClassification out;
  if (covers.empty()) {
    out.shape = CoverShape::Empty;
    return out;
  }
  const int n = covers.front().n();
  std::vector<Block> all_blocks;
  for (const PartialPartition& c : covers) {
    for (Block b : c.blocks()) {
      if (std::find(all_blocks.begin(), all_blocks.end(), b) == all_blocks.end()) all_blocks.push_back(b);
    }
  }
  out.union_block_count = static_cast<int>(all_blocks.size());
  bool disjoint = true;
  std::uint64_t seen = 0;
  for (Block b : all_blocks) {
    if ((seen & b.mask()) != 0) disjoint = false;
    seen |= b.mask();
  }
  if (disjoint) out.union_blocks = PartialPartition(n, all_blocks);

  if (covers.size() == 1) {
    out.shape = CoverShape::Singleton;
    out.core = covers.front();
    return out;
  }
  for (std::size_t i = 0; i < covers.size(); ++i) {
    for (std::size_t j = i + 1; j < covers.size(); ++j) {
      if (common_blocks(covers[i], covers[j]) < t) {
        out.shape = CoverShape::NotTIntersecting;
        out.witness_pair = std::make_pair(covers[i], covers[j]);
        return out;
      }
    }
  }
  PartialPartition core = covers.front();
  for (const PartialPartition& c : covers) core = intersect(core, c);
  out.core = core;
  if (static_cast<int>(core.size()) >= t) {
    out.shape = CoverShape::CoreT;
    bool pairwise = true;
    for (std::size_t i = 0; i < covers.size() && pairwise; ++i) {
      for (std::size_t j = i + 1; j < covers.size(); ++j) {
        if (intersect(covers[i], covers[j]) != core) {
          pairwise = false;
          break;
        }
      }
    }
    out.core_structure_ok = pairwise && disjoint && out.union_block_count <= k;
  } else {
    out.shape = CoverShape::CoreBelowT;
  }
  return out;
}

}  // namespace kpart
