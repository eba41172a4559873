#include "kpart/search.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "kpart/constructions.hpp"
#include "kpart/enumerate.hpp"
#include "kpart/stirling.hpp"

namespace kpart {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
void clear_bit(Bits& b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t count(const Bits& b) {
  std::size_t c = 0;
  for (std::uint64_t w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Bits intersect(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

template <typename Fn>
void for_each_bit(const Bits& b, Fn&& fn) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    for (std::uint64_t m = b[w]; m != 0; m &= m - 1) {
      fn(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
    }
  }
}

void check_budget(const GroundParams& p, std::uint64_t budget, const char* what) {
  BigCount total = stirling(p.n, p.k);
  if (total > BigCount(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded(std::string(what) + ": S(" + std::to_string(p.n) + "," + std::to_string(p.k) +
                         ") = " + to_string(total) + " exceeds the budget " + std::to_string(budget));
  }
}

// Branch and bound for maximum cliques with the greedy colouring bound.
class MaxCliqueSearch {
 public:
  explicit MaxCliqueSearch(const IntersectionGraph& g) : g_(g) {
    order_.resize(g.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
  }

  std::size_t maximum() {
    enumerate_ = false;
    best_ = 0;
    std::vector<std::size_t> r;
    expand(r, order_);
    return best_;
  }

  template <typename Fn>
  void each_maximum(std::size_t omega, Fn&& on_clique) {
    enumerate_ = true;
    best_ = omega;
    on_clique_ = [&](const std::vector<std::size_t>& c) { on_clique(c); };
    std::vector<std::size_t> r;
    expand(r, order_);
  }

 private:
  void colour(const std::vector<std::size_t>& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colours) {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : p) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = std::any_of(classes[c].begin(), classes[c].end(), [&](std::size_t u) { return g_.adjacent(u, v); });
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    verts.clear();
    colours.clear();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t v : classes[c]) {
        verts.push_back(v);
        colours.push_back(c + 1);
      }
    }
  }

  void expand(std::vector<std::size_t>& r, std::vector<std::size_t> p) {
    std::vector<std::size_t> verts, colours;
    colour(p, verts, colours);
    for (std::size_t i = verts.size(); i-- > 0;) {
      std::size_t bound = r.size() + colours[i];
      if (enumerate_ ? bound < best_ : bound <= best_) return;
      std::size_t v = verts[i];
      r.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t u : p) {
        if (u != v && g_.adjacent(u, v)) next.push_back(u);
      }
      if (next.empty()) {
        if (enumerate_) {
          if (r.size() == best_) on_clique_(r);
        } else if (r.size() > best_) {
          best_ = r.size();
        }
      } else {
        expand(r, std::move(next));
      }
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
    }
  }

  const IntersectionGraph& g_;
  std::vector<std::size_t> order_;
  std::size_t best_ = 0;
  bool enumerate_ = false;
  std::function<void(const std::vector<std::size_t>&)> on_clique_;
};

// Bron-Kerbosch with Tomita pivoting.
template <typename Fn>
void bron_kerbosch(const IntersectionGraph& g, std::vector<std::size_t>& r, Bits p, Bits x, Fn& report) {
  if (none(p) && none(x)) {
    report(r);
    return;
  }
  std::size_t pivot = 0, best = 0;
  bool have = false;
  auto consider = [&](std::size_t u) {
    std::size_t c = count(intersect(p, g.neighbours(u)));
    if (!have || c > best) {
      pivot = u;
      best = c;
      have = true;
    }
  };
  for_each_bit(p, consider);
  for_each_bit(x, consider);
  Bits candidates = p;
  const Bits& pn = g.neighbours(pivot);
  for (std::size_t w = 0; w < candidates.size(); ++w) candidates[w] &= ~pn[w];
  for_each_bit(candidates, [&](std::size_t v) {
    r.push_back(v);
    bron_kerbosch(g, r, intersect(p, g.neighbours(v)), intersect(x, g.neighbours(v)), report);
    r.pop_back();
    clear_bit(p, v);
    set_bit(x, v);
  });
}

// Element colour refinement used to restrict isomorphism candidates.
struct ElementProfile {
  std::vector<std::vector<int>> cooccur;  // members where i and j share a block
  std::vector<std::vector<int>> block_sizes;  // sizes of the blocks holding i
};

ElementProfile profile(const Family& f) {
  const int n = f.params().n;
  ElementProfile out;
  out.cooccur.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  out.block_sizes.assign(static_cast<std::size_t>(n), {});
  for (const SetPartition& m : f) {
    for (Block b : m.blocks()) {
      std::vector<int> els = b.elements();
      for (int i : els) {
        out.block_sizes[static_cast<std::size_t>(i - 1)].push_back(b.size());
        for (int j : els) out.cooccur[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]++;
      }
    }
  }
  for (auto& s : out.block_sizes) std::sort(s.begin(), s.end());
  return out;
}

// Joint colour refinement so that colours are comparable between families.
std::pair<std::vector<int>, std::vector<int>> refine(const ElementProfile& a, const ElementProfile& b) {
  const std::size_t n = a.cooccur.size();
  std::map<std::vector<int>, int> dict;
  auto id = [&](const std::vector<int>& key) {
    auto [it, inserted] = dict.emplace(key, static_cast<int>(dict.size()));
    return it->second;
  };
  std::vector<int> ca(n), cb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ca[i] = id(a.block_sizes[i]);
    cb[i] = id(b.block_sizes[i]);
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::vector<int>, int> next_dict;
    auto step = [&](const ElementProfile& pr, const std::vector<int>& colours) {
      std::vector<int> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<int, int>> nbr;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) nbr.emplace_back(pr.cooccur[i][j], colours[j]);
        }
        std::sort(nbr.begin(), nbr.end());
        std::vector<int> key{colours[i]};
        for (auto [c, col] : nbr) {
          key.push_back(c);
          key.push_back(col);
        }
        auto [it, inserted] = next_dict.emplace(key, static_cast<int>(next_dict.size()));
        out[i] = it->second;
      }
      return out;
    };
    std::vector<int> na = step(a, ca);
    std::vector<int> nb = step(b, cb);
    std::size_t before = dict.size();
    bool stable = std::set<int>(na.begin(), na.end()).size() == std::set<int>(ca.begin(), ca.end()).size() &&
                  std::set<int>(nb.begin(), nb.end()).size() == std::set<int>(cb.begin(), cb.end()).size();
    ca = std::move(na);
    cb = std::move(nb);
    (void)before;
    if (stable) break;
  }
  return {ca, cb};
}

Family relabel(const Family& f, const std::vector<int>& perm) {
  std::vector<SetPartition> members;
  members.reserve(f.size());
  for (const SetPartition& m : f) {
    std::vector<Block> blocks;
    for (Block b : m.blocks()) {
      std::uint64_t mask = 0;
      for (int e : b.elements()) mask |= std::uint64_t{1} << (perm[static_cast<std::size_t>(e - 1)] - 1);
      blocks.emplace_back(mask);
    }
    members.emplace_back(f.params().n, std::move(blocks));
  }
  return Family(f.params(), std::move(members));
}

std::vector<int> sorted_profile(const SetPartition& m) {
  std::vector<int> sizes;
  for (Block b : m.blocks()) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntersectionGraph

IntersectionGraph::IntersectionGraph(const GroundParams& p, std::uint64_t budget) : params_(p) {
  p.validate();
  check_budget(p, budget, "intersection graph");
  vertices_ = enumerate_partitions(p);
  const std::size_t words = (vertices_.size() + 63) / 64;
  adj_.assign(vertices_.size(), Bits(words, 0));
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
      if (common_blocks(vertices_[a], vertices_[b]) >= p.t) {
        set_bit(adj_[a], b);
        set_bit(adj_[b], a);
      }
    }
  }
}

std::size_t IntersectionGraph::degree(std::size_t v) const { return count(adj_[v]); }

std::optional<std::size_t> IntersectionGraph::index_of(const SetPartition& p) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
  if (it == vertices_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

Family IntersectionGraph::family_of(const std::vector<std::size_t>& clique) const {
  std::vector<SetPartition> members;
  for (std::size_t v : clique) members.push_back(vertices_[v]);
  return Family(params_, std::move(members));
}

// ---------------------------------------------------------------------------
// Closure and maximum

Family maximal_closure(const Family& f0, std::uint64_t budget) {
  const GroundParams& p = f0.params();
  if (!is_t_intersecting(f0, p.t)) {
    throw std::invalid_argument("closure seed is not t-intersecting");
  }
  check_budget(p, budget, "maximal closure");
  std::vector<SetPartition> members = f0.members();
  bool added = true;
  while (added) {
    added = false;
    for (PartitionStream s(p.n, p.k); !s.done(); s.advance()) {
      SetPartition cand = s.current();
      if (std::find(members.begin(), members.end(), cand) != members.end()) continue;
      bool fits = std::all_of(members.begin(), members.end(),
                              [&](const SetPartition& m) { return common_blocks(m, cand) >= p.t; });
      if (fits) {
        members.push_back(std::move(cand));
        added = true;
      }
    }
  }
  return Family(p, std::move(members));
}

bool is_singleton_star(const Family& f) {
  const GroundParams& p = f.params();
  PartialPartition core = common_core(f);
  std::vector<Block> singles;
  for (Block b : core.blocks()) {
    if (b.size() == 1) singles.push_back(b);
  }
  if (static_cast<int>(singles.size()) < p.t) return false;
  singles.resize(static_cast<std::size_t>(p.t));
  return BigCount(static_cast<unsigned long>(f.size())) == stirling(p.n - p.t, p.k - p.t);
}

SearchResult max_family(const GroundParams& p, std::uint64_t budget, std::size_t witness_cap) {
  IntersectionGraph g(p, budget);
  MaxCliqueSearch search(g);
  std::size_t omega = search.maximum();

  SearchResult out;
  out.params = p;
  out.max_size = BigCount(static_cast<unsigned long>(omega));
  out.threshold_met = p.k >= p.t + 2 && meets_L(p.n, p.k, p.t);
  out.all_witnesses_singleton_stars = true;
  search.each_maximum(omega, [&](const std::vector<std::size_t>& clique) {
    Family fam = g.family_of(clique);
    ++out.witness_count;
    if (!is_singleton_star(fam)) out.all_witnesses_singleton_stars = false;
    if (out.witnesses.size() < witness_cap) out.witnesses.push_back(std::move(fam));
  });
  std::sort(out.witnesses.begin(), out.witnesses.end(),
            [](const Family& a, const Family& b) { return a.members() < b.members(); });
  out.matches_star = out.max_size == stirling(p.n - p.t, p.k - p.t) && out.all_witnesses_singleton_stars;
  return out;
}

// ---------------------------------------------------------------------------
// Maximal non-trivial families

NontrivialSearchResult enumerate_maximal_nontrivial(const GroundParams& p, std::uint64_t budget) {
  IntersectionGraph g(p, budget);
  NontrivialSearchResult out;
  out.params = p;
  std::vector<Family> found;
  auto report = [&](const std::vector<std::size_t>& clique) {
    ++out.maximal_count;
    Family fam = g.family_of(clique);
    if (static_cast<int>(common_core(fam).size()) < p.t) found.push_back(std::move(fam));
  };
  Bits all(( g.size() + 63) / 64, 0);
  for (std::size_t v = 0; v < g.size(); ++v) set_bit(all, v);
  std::vector<std::size_t> r;
  bron_kerbosch(g, r, all, Bits(all.size(), 0), report);
  std::sort(found.begin(), found.end(), [](const Family& a, const Family& b) { return a.members() < b.members(); });

  for (Family& fam : found) {
    NontrivialFamilyCheck check;
    std::map<std::uint64_t, int> frequency;
    for (const SetPartition& m : fam) {
      for (Block b : m.blocks()) frequency[b.mask()]++;
    }
    std::vector<Block> z;
    for (auto [mask, c] : frequency) {
      if (c >= p.t + 1) z.emplace_back(mask);
    }
    std::uint64_t seen = 0;
    bool disjoint = true;
    for (Block b : z) {
      if ((seen & b.mask()) != 0) disjoint = false;
      seen |= b.mask();
    }
    if (disjoint && static_cast<int>(z.size()) == p.t + 2) {
      PartialPartition zp(p.n, z);
      check.z = zp;
      std::vector<SetPartition> alpha;
      for (const SetPartition& v : g.vertices()) {
        if (common_blocks(zp, v) >= p.t + 1) alpha.push_back(v);
      }
      check.equals_alpha = Family(p, std::move(alpha)) == fam;
    }
    check.closure_stable = maximal_closure(fam, budget) == fam;
    if (p.k == p.t + 2) {
      bool ok = check.equals_alpha && static_cast<int>(fam.size()) == p.t + 2 && check.closure_stable;
      out.classification_holds = out.classification_holds && ok;
    }
    check.family = std::move(fam);
    out.families.push_back(std::move(check));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

bool isomorphic(const Family& f1, const Family& f2, int budget) {
  if (f1.params().n != f2.params().n || f1.params().k != f2.params().k) return false;
  const int n = f1.params().n;
  if (n > budget) {
    throw BudgetExceeded("isomorphism test needs n <= " + std::to_string(budget));
  }
  if (f1.size() != f2.size()) return false;
  if (f1 == f2) return true;

  auto profiles = [](const Family& f) {
    std::vector<std::vector<int>> out;
    for (const SetPartition& m : f) out.push_back(sorted_profile(m));
    std::sort(out.begin(), out.end());
    return out;
  };
  if (profiles(f1) != profiles(f2)) return false;

  auto pair_histogram = [](const Family& f) {
    std::map<int, std::uint64_t> hist;
    const auto& ms = f.members();
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = i + 1; j < ms.size(); ++j) hist[common_blocks(ms[i], ms[j])]++;
    }
    return hist;
  };
  if (pair_histogram(f1) != pair_histogram(f2)) return false;

  ElementProfile a = profile(f1), b = profile(f2);
  auto [ca, cb] = refine(a, b);
  {
    std::vector<int> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == static_cast<std::size_t>(n)) {
      return relabel(f1, perm) == f2;
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
      if (used[j] || ca[i] != cb[j]) continue;
      bool consistent = a.cooccur[i][i] == b.cooccur[j][j];
      for (std::size_t q = 0; q < i && consistent; ++q) {
        std::size_t pq = static_cast<std::size_t>(perm[q] - 1);
        consistent = a.cooccur[i][q] == b.cooccur[j][pq];
      }
      if (!consistent) continue;
      perm[i] = static_cast<int>(j) + 1;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return assign(assign, 0);
}

// ---------------------------------------------------------------------------
// Second largest trivial family

VerdictRecord second_largest_trivial_check(const GroundParams& p, std::uint64_t budget) {
  p.validate();
  VerdictRecord rec;
  rec.claim = "C3.2-second-star";
  rec.point = {{"n", p.n}, {"k", p.k}, {"t", p.t}};
  rec.mode = ArithmeticMode::Exact;

  const BigCount top = stirling(p.n - p.t, p.k - p.t);
  const BigCount expected = stirling(p.n - p.t - 1, p.k - p.t);
  const bool enumerable = stirling(p.n, p.k) <= BigCount(static_cast<unsigned long>(budget));

  std::vector<std::vector<int>> shapes = size_profiles(p.t, p.n - (p.k - p.t));
  BigCount second = 0;
  std::vector<std::vector<int>> attaining;
  bool formulas_ok = true;
  bool singletons_top = false;
  for (const auto& sizes : shapes) {
    FamilySpec spec = FamilySpec::star(p, PartialPartition(p.n, consecutive_blocks(sizes)));
    BigCount size = size_star(spec);
    if (enumerable) {
      Family fam = materialize(spec, budget);
      if (BigCount(static_cast<unsigned long>(fam.size())) != size) formulas_ok = false;
    }
    bool all_single = std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 1; });
    if (all_single) {
      singletons_top = size == top;
      continue;
    }
    if (size == top) formulas_ok = false;  // only singletons may reach the maximum
    if (size == 0 || size > top) continue;
    if (size > second) {
      second = size;
      attaining.clear();
    }
    if (size == second) attaining.push_back(sizes);
  }

  std::vector<int> doubleton_shape(static_cast<std::size_t>(p.t - 1), 1);
  doubleton_shape.push_back(2);
  if (second == 0) {
    rec.lhs = "0";
    rec.rhs = to_string(expected);
    rec.pass = formulas_ok && singletons_top && expected == 0;
    rec.note = "no non-empty star below the maximum (vacuous)";
    return rec;
  }
  rec.lhs = to_string(second);
  rec.rhs = to_string(expected);
  rec.tight = true;
  bool shape_ok = attaining.size() == 1 && attaining.front() == doubleton_shape;
  rec.pass = formulas_ok && singletons_top && second == expected && shape_ok;
  if (!shape_ok) rec.note = "second largest star attained by another shape";
  if (!formulas_ok) rec.note = "star size formula disagrees with enumeration";
  return rec;
}

}  // namespace kpart
