#include "kpart/constructions.hpp"

#include <algorithm>
#include <bit>

#include "kpart/enumerate.hpp"
#include "kpart/parallel.hpp"
#include "kpart/stirling.hpp"

namespace kpart {

namespace {

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::vector<Block> blocks_minus(const PartialPartition& m, const PartialPartition& x) {
  std::vector<Block> out;
  for (Block b : m.blocks()) {
    if (!x.has_block(b)) out.push_back(b);
  }
  return out;
}

bool all_size(std::span<const Block> blocks, int size) {
  return std::all_of(blocks.begin(), blocks.end(), [size](Block b) { return b.size() == size; });
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Star:
      return "star";
    case FamilyKind::Alpha:
      return "alpha";
    case FamilyKind::HM:
      return "hm";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "star") return FamilyKind::Star;
  if (name == "alpha") return FamilyKind::Alpha;
  if (name == "hm" || name == "h1") return FamilyKind::HM;
  throw std::invalid_argument("unknown family kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// FamilySpec

FamilySpec FamilySpec::star(GroundParams p, PartialPartition x) {
  FamilySpec s{FamilyKind::Star, p, std::move(x), PartialPartition(p.n, {})};
  s.validate();
  return s;
}

FamilySpec FamilySpec::alpha(GroundParams p, PartialPartition z) {
  FamilySpec s{FamilyKind::Alpha, p, std::move(z), PartialPartition(p.n, {})};
  s.validate();
  return s;
}

FamilySpec FamilySpec::hm(GroundParams p, PartialPartition x, PartialPartition m) {
  FamilySpec s{FamilyKind::HM, p, std::move(m), std::move(x)};
  s.validate();
  return s;
}

FamilySpec FamilySpec::named_star(GroundParams p) {
  p.validate();
  return star(p, first_singletons(p.n, p.t));
}

FamilySpec FamilySpec::named_alpha(GroundParams p) {
  p.validate();
  if (p.t + 2 > p.n) throw std::invalid_argument("A(n,k,t) needs n >= t+2");
  return alpha(p, first_singletons(p.n, p.t + 2));
}

FamilySpec FamilySpec::named_hm(GroundParams p) {
  p.validate();
  return hm(p, first_singletons(p.n, p.t), first_singletons(p.n, p.k));
}

FamilySpec FamilySpec::named_h1(GroundParams p) {
  p.validate();
  if (p.k + 1 > p.n) throw std::invalid_argument("H1(n,k,t) needs n >= k+1");
  std::vector<Block> m;
  for (int i = 1; i < p.k; ++i) m.push_back(Block::of({i}));
  m.push_back(Block::of({p.k, p.k + 1}));
  return hm(p, first_singletons(p.n, p.t), PartialPartition(p.n, std::move(m)));
}

void FamilySpec::validate() const {
  params.validate();
  if (anchor.n() != params.n || core.n() != params.n) {
    throw std::invalid_argument("anchor lives on a different ground set");
  }
  switch (kind) {
    case FamilyKind::Star:
      if (static_cast<int>(anchor.size()) != params.t) {
        throw std::invalid_argument("star anchor X must have exactly t blocks");
      }
      break;
    case FamilyKind::Alpha:
      if (static_cast<int>(anchor.size()) != params.t + 2) {
        throw std::invalid_argument("alpha anchor Z must have exactly t+2 blocks");
      }
      break;
    case FamilyKind::HM:
      if (static_cast<int>(anchor.size()) != params.k) {
        throw std::invalid_argument("HM anchor M must have exactly k blocks");
      }
      if (static_cast<int>(core.size()) != params.t) {
        throw std::invalid_argument("HM core X must have exactly t blocks");
      }
      for (Block b : core.blocks()) {
        if (!anchor.has_block(b)) throw std::invalid_argument("HM core X must be a subset of M");
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Membership

bool member_star(const FamilySpec& spec, const SetPartition& f) { return contains(f, spec.anchor); }

bool member_alpha(const FamilySpec& spec, const SetPartition& f) {
  return common_blocks(spec.anchor, f) >= spec.params.t + 1;
}

bool member_hm(const FamilySpec& spec, const SetPartition& f) {
  if (contains(f, spec.core)) {
    for (Block c : spec.anchor.blocks()) {
      if (!spec.core.has_block(c) && f.has_block(c)) return true;
    }
  }
  std::uint64_t outside = full_mask(spec.params.n) & ~spec.anchor.support();
  for (Block b : spec.core.blocks()) {
    if (!f.has_block(Block(b.mask() | outside))) continue;
    bool rest = true;
    for (Block c : spec.anchor.blocks()) {
      if (c != b && !f.has_block(c)) {
        rest = false;
        break;
      }
    }
    if (rest) return true;
  }
  return false;
}

bool is_member(const FamilySpec& spec, const SetPartition& f) {
  switch (spec.kind) {
    case FamilyKind::Star:
      return member_star(spec, f);
    case FamilyKind::Alpha:
      return member_alpha(spec, f);
    case FamilyKind::HM:
      return member_hm(spec, f);
  }
  return false;
}

std::vector<SetPartition> hm_exceptional_members(const FamilySpec& spec) {
  std::uint64_t outside = full_mask(spec.params.n) & ~spec.anchor.support();
  std::vector<SetPartition> out;
  for (Block b : spec.core.blocks()) {
    std::vector<Block> blocks;
    for (Block c : spec.anchor.blocks()) {
      blocks.push_back(c == b ? Block(c.mask() | outside) : c);
    }
    out.emplace_back(spec.params.n, std::move(blocks));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Family materialize_if(const GroundParams& p, const std::function<bool(const SetPartition&)>& keep,
                      std::uint64_t budget, int workers) {
  BigCount total = stirling(p.n, p.k);
  if (total > BigCount(std::to_string(budget))) {
    throw BudgetExceeded("S(" + std::to_string(p.n) + "," + std::to_string(p.k) + ") = " + to_string(total) +
                         " partitions exceed the enumeration budget " + std::to_string(budget));
  }
  std::vector<EnumerationRange> ranges = split_by_prefix(p.n, p.k, std::min(p.n, 5));
  std::vector<std::vector<SetPartition>> chunks(ranges.size());
  parallel_for(ranges.size(), workers, [&](std::size_t i) {
    for (PartitionStream s(ranges[i]); !s.done(); s.advance()) {
      SetPartition f = s.current();
      if (keep(f)) chunks[i].push_back(std::move(f));
    }
  });
  std::vector<SetPartition> members;
  for (auto& chunk : chunks) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(members));
  }
  return Family(p, std::move(members));
}

Family materialize(const FamilySpec& spec, std::uint64_t budget, int workers) {
  spec.validate();
  return materialize_if(spec.params, [&spec](const SetPartition& f) { return is_member(spec, f); }, budget,
                        workers);
}

// ---------------------------------------------------------------------------
// Closed forms

BigCount size_star(const FamilySpec& spec) {
  return stirling(spec.params.n - spec.anchor.covered(), spec.params.k - spec.params.t);
}

BigCount size_alpha_named(long n, long k, long t) {
  return BigCount(t + 2) * stirling(n - t - 1, k - t - 1) - BigCount(t + 1) * stirling(n - t - 2, k - t - 2);
}

BigCount size_alpha_general(const FamilySpec& spec) {
  const long n = spec.params.n, k = spec.params.k, t = spec.params.t;
  const long covered = spec.anchor.covered();
  BigCount sum = 0;
  for (Block b : spec.anchor.blocks()) {
    sum += stirling(n - covered + b.size(), k - t - 1);
  }
  return sum - BigCount(t + 1) * stirling(n - covered, k - t - 2);
}

BigCount size_hm_named(long n, long k, long t) {
  BigCount sum = 0;
  for (long j = 1; j <= k - t; ++j) {
    BigCount term = binomial(k - t, j) * stirling(n - t - j, k - t - j);
    if (j % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum + t;
}

BigCount size_h1(long n, long k, long t) {
  BigCount sum = 0;
  for (long j = 1; j <= k - t; ++j) {
    BigCount term = binomial(k - t - 1, j) * stirling(n - t - j, k - t - j) +
                    binomial(k - t - 1, j - 1) * stirling(n - t - j - 1, k - t - j);
    if (j % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum + t;
}

BigCount size_hm_general(const FamilySpec& spec) {
  const long n = spec.params.n, k = spec.params.k, t = spec.params.t;
  std::vector<Block> rest = blocks_minus(spec.anchor, spec.core);
  if (rest.size() > 24) {
    throw std::invalid_argument("size_hm_general supports at most 24 blocks in M \\ X");
  }
  const long core_covered = spec.core.covered();
  BigCount sum = 0;
  const std::uint32_t subsets = std::uint32_t{1} << rest.size();
  for (std::uint32_t j = 1; j < subsets; ++j) {
    long covered = core_covered;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if ((j >> i) & 1U) covered += rest[i].size();
    }
    long size = std::popcount(j);
    BigCount term = stirling(n - covered, k - t - size);
    if (size % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (spec.anchor.covered() < n) {
    sum += t;
  }
  return sum;
}

BigCount closed_form_size(const FamilySpec& spec) {
  const GroundParams& p = spec.params;
  std::string name = closed_form_name(spec);
  if (name == "star") return size_star(spec);
  if (name == "alpha") return size_alpha_general(spec);
  if (name == "hm") return size_hm_named(p.n, p.k, p.t);
  if (name == "h1") return size_h1(p.n, p.k, p.t);
  return size_hm_general(spec);
}

std::string closed_form_name(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Star:
      return "star";
    case FamilyKind::Alpha:
      return "alpha";
    case FamilyKind::HM:
      break;
  }
  const GroundParams& p = spec.params;
  std::vector<Block> rest = blocks_minus(spec.anchor, spec.core);
  if (!all_size(spec.core.blocks(), 1)) return "hm-general";
  int doubletons = 0;
  for (Block b : rest) {
    if (b.size() == 2) {
      ++doubletons;
    } else if (b.size() != 1) {
      return "hm-general";
    }
  }
  if (doubletons == 0 && p.n >= p.k + 1) return "hm";
  if (doubletons == 1 && p.n >= p.k + 2) return "h1";
  return "hm-general";
}

BigCount r_value(long n, long k, long t) {
  return size_hm_named(n, k, t) - stirling(n - t - 1, k - t - 1) + stirling(n - t - 2, k - t - 1);
}

BigCount f_value(long m, long k, long t, long n) {
  if (m < t || m > k) {
    throw std::invalid_argument("f(m,k,t,n) needs t <= m <= k");
  }
  if (m == k) {
    return power(k - t + 1, static_cast<unsigned long>(k - t)) * binomial(k, t);
  }
  return power(k - t + 1, static_cast<unsigned long>(m - t)) * binomial(m, t) * stirling(n - m, k - m);
}

BigCount u1(long n, long k, long t) {
  return BigCount(k - t - 2) * stirling(n - t - 1, k - t - 1) + 2 * stirling(n - t - 2, k - t - 1) + 2 * t;
}

BigCount u2(long n, long k, long t) {
  BigCount sum = 0;
  for (long j = 1; j <= 3; ++j) {
    BigCount term = binomial(k - t - 1, j) * stirling(n - t - j, k - t - j);
    if (j % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum + stirling(n - t - 3, k - t - 1) + 2 * t;
}

// ---------------------------------------------------------------------------
// Anchor shapes

std::vector<std::vector<int>> size_profiles(int parts, int max_total) {
  std::vector<std::vector<int>> out;
  if (parts <= 0) {
    if (max_total >= 0) out.emplace_back();
    return out;
  }
  std::vector<int> current;
  auto recurse = [&](auto&& self, int min_size, int budget) -> void {
    if (static_cast<int>(current.size()) == parts) {
      out.push_back(current);
      return;
    }
    int left = parts - static_cast<int>(current.size());
    for (int s = min_size; s * left <= budget; ++s) {
      current.push_back(s);
      self(self, s, budget - s);
      current.pop_back();
    }
  };
  recurse(recurse, 1, max_total);
  return out;
}

std::vector<Block> consecutive_blocks(const std::vector<int>& sizes, int first) {
  std::vector<Block> out;
  for (int s : sizes) {
    out.push_back(Block::range(first, first + s - 1));
    first += s;
  }
  return out;
}

std::vector<FamilySpec> anchor_shape_specs(const GroundParams& p) {
  p.validate();
  std::vector<FamilySpec> out;
  for (const auto& sizes : size_profiles(p.t, p.n - p.k + p.t)) {
    out.push_back(FamilySpec::star(p, PartialPartition(p.n, consecutive_blocks(sizes))));
  }
  for (const auto& sizes : size_profiles(p.t + 2, p.n - p.k + p.t + 2)) {
    out.push_back(FamilySpec::alpha(p, PartialPartition(p.n, consecutive_blocks(sizes))));
  }
  for (const auto& core_sizes : size_profiles(p.t, p.n - (p.k - p.t))) {
    int used = 0;
    for (int s : core_sizes) used += s;
    for (const auto& rest_sizes : size_profiles(p.k - p.t, p.n - used)) {
      std::vector<Block> core = consecutive_blocks(core_sizes);
      std::vector<Block> rest = consecutive_blocks(rest_sizes, used + 1);
      std::vector<Block> all = core;
      all.insert(all.end(), rest.begin(), rest.end());
      out.push_back(FamilySpec::hm(p, PartialPartition(p.n, std::move(core)), PartialPartition(p.n, std::move(all))));
    }
  }
  return out;
}

}  // namespace kpart
