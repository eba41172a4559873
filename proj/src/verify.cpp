#include "kpart/verify.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <random>
#include <set>

#include "kpart/constructions.hpp"
#include "kpart/covers.hpp"
#include "kpart/enumerate.hpp"
#include "kpart/interval.hpp"
#include "kpart/parallel.hpp"
#include "kpart/stirling.hpp"

namespace kpart {

namespace {

enum class Threshold { None, L, TwoL };

struct ClaimInfo {
  std::string id;
  Threshold threshold = Threshold::None;
  long min_kt = 2;
};

const std::vector<ClaimInfo>& registry() {
  static const std::vector<ClaimInfo> claims = {
      {"L2.1-ratio", Threshold::None, 0},       {"L2.2-inductive", Threshold::None, 0},
      {"L2.3-key", Threshold::None, 0},         {"L4.1-binom", Threshold::None, 0},
      {"L4.2-Q", Threshold::None, 0},           {"L4.3-RD", Threshold::None, 0},
      {"L4.4-mono", Threshold::L, 2},           {"L4.5-t2small", Threshold::TwoL, 4},
      {"L4.6-qt", Threshold::TwoL, 3},          {"L4.7-gap", Threshold::TwoL, 3},
      {"L3.2-gap", Threshold::TwoL, 3},         {"L3.3-rlb", Threshold::TwoL, 3},
      {"L4.8-u1u2", Threshold::TwoL, 3},        {"L4.9-hh1", Threshold::TwoL, 3},
      {"L4.10-trichotomy", Threshold::TwoL, 3}, {"F-sizes", Threshold::None, 0},
  };
  return claims;
}

const ClaimInfo& info(std::string_view id) {
  for (const ClaimInfo& c : registry()) {
    if (c.id == id) return c;
  }
  throw UnknownClaim("unknown claim id: " + std::string(id));
}

long get(const Point& point, std::string_view name) {
  for (const auto& [key, value] : point) {
    if (key == name) return value;
  }
  throw std::invalid_argument("grid point lacks " + std::string(name));
}

BigCount S(long n, long k) { return stirling(n, k); }
BigRatio Q(const BigCount& v) { return BigRatio(v); }

enum class Rel { Le, Lt, Ge, Gt, Eq };

std::string_view symbol(Rel rel) {
  switch (rel) {
    case Rel::Le:
      return "<=";
    case Rel::Lt:
      return "<";
    case Rel::Ge:
      return ">=";
    case Rel::Gt:
      return ">";
    case Rel::Eq:
      return "=";
  }
  return "?";
}

bool holds(const BigRatio& a, Rel rel, const BigRatio& b) {
  switch (rel) {
    case Rel::Le:
      return a <= b;
    case Rel::Lt:
      return a < b;
    case Rel::Ge:
      return a >= b;
    case Rel::Gt:
      return a > b;
    case Rel::Eq:
      return a == b;
  }
  return false;
}

Point with(Point point, std::string name, long value) {
  point.emplace_back(std::move(name), value);
  return point;
}

VerdictRecord exact(std::string_view claim, Point point, const BigRatio& lhs, Rel rel, const BigRatio& rhs,
                    std::string_view what) {
  VerdictRecord rec;
  rec.claim = std::string(claim);
  rec.point = std::move(point);
  rec.lhs = to_string(lhs);
  rec.rhs = to_string(rhs);
  rec.pass = holds(lhs, rel, rhs);
  rec.tight = (rel == Rel::Le || rel == Rel::Ge) && lhs == rhs;
  rec.mode = ArithmeticMode::Exact;
  rec.note = std::string(what) + " [lhs " + std::string(symbol(rel)) + " rhs]";
  return rec;
}

// Decides lhs > rhs from enclosures of their difference, doubling the
// precision while the sign is undetermined.
VerdictRecord interval_gt(std::string_view claim, Point point, const std::function<Interval(mpfr_prec_t)>& lhs,
                          const std::function<Interval(mpfr_prec_t)>& rhs, std::string_view what) {
  constexpr mpfr_prec_t kStart = 64;
  constexpr mpfr_prec_t kLimit = 4096;
  VerdictRecord rec;
  rec.claim = std::string(claim);
  rec.point = std::move(point);
  rec.mode = ArithmeticMode::Interval;
  rec.note = std::string(what) + " [lhs > rhs]";
  for (mpfr_prec_t prec = kStart;; prec *= 2) {
    Interval a = lhs(prec);
    Interval b = rhs(prec);
    Interval diff = a - b;
    rec.lhs = a.to_string();
    rec.rhs = b.to_string();
    if (diff.positive()) {
      rec.pass = true;
      return rec;
    }
    if (diff.negative()) {
      rec.pass = false;
      return rec;
    }
    if (prec * 2 > kLimit) {
      rec.pass = false;
      rec.note += " indeterminate at " + std::to_string(prec) + " bits";
      return rec;
    }
  }
}

// Threshold claims -----------------------------------------------------------

long threshold_n(Threshold th, long k, long t) { return th == Threshold::L ? min_n_for_L(k, t) : min_n_for_2L(k, t); }

std::vector<VerdictRecord> check_mono(std::string_view c, const Point& pt, long n, long k, long t) {
  std::vector<VerdictRecord> out;
  const unsigned long e = static_cast<unsigned long>(k - t + 1);
  out.push_back(exact(c, with(pt, "part", 0), Q(power(2, static_cast<unsigned long>(n - t - 1))), Rel::Ge,
                      Q(power((t + 1) * (k - t + 1), e)), "2^(n-t-1) >= ((t+1)(k-t+1))^(k-t+1)"));
  auto g = [&](long m) -> BigCount { return power(k - t + 1, static_cast<unsigned long>(m - t)) * S(n - m, k - m); };
  for (long m = t; m <= k - 2; ++m) {
    out.push_back(exact(c, with(with(pt, "part", 1), "m", m), Q(f_value(m, k, t, n)), Rel::Gt,
                        Q(f_value(m + 1, k, t, n)), "f(m) > f(m+1)"));
    out.push_back(exact(c, with(with(pt, "part", 2), "m", m), Q(g(m)), Rel::Gt, Q(g(m + 1)),
                        "(k-t+1)^(m-t) S(n-m,k-m) decreasing"));
  }
  for (long m = t; m <= k; ++m) {
    Rel rel = m == t ? Rel::Eq : Rel::Lt;
    out.push_back(exact(c, with(with(pt, "part", 3), "m", m), Q(f_value(m, k, t, n)), rel, Q(S(n - t, k - t)),
                        m == t ? "f(t) = S(n-t,k-t)" : "f(m) < S(n-t,k-t)"));
  }
  return out;
}

std::vector<VerdictRecord> check_threshold_claim(std::string_view c, const Point& pt) {
  const long n = get(pt, "n"), k = get(pt, "k"), t = get(pt, "t");
  std::vector<VerdictRecord> out;
  if (c == "L4.4-mono") return check_mono(c, pt, n, k, t);
  const BigCount r = r_value(n, k, t);
  if (c == "L4.5-t2small") {
    out.push_back(exact(c, with(pt, "part", 1), Q(f_value(k, k, t, n)), Rel::Lt, Q(f_value(t + 2, k, t, n)),
                        "f(k) < f(t+2)"));
    out.push_back(exact(c, with(pt, "part", 2), Q(f_value(t + 2, k, t, n)), Rel::Lt, Q(r), "f(t+2) < r"));
  } else if (c == "L4.6-qt") {
    auto q = [&](long s) -> BigCount { return S(n - t - s, k - t - s) + BigCount(s * t); };
    if (k - t - 1 < 3) {
      VerdictRecord rec = exact(c, with(pt, "s", 2), Q(q(2)), Rel::Eq, Q(q(2)), "single value of s");
      rec.note += " (vacuous)";
      out.push_back(std::move(rec));
    }
    for (long s = 2; s <= k - t - 2; ++s) {
      out.push_back(exact(c, with(pt, "s", s), Q(q(s)), Rel::Gt, Q(q(s + 1)), "S(n-t-s,k-t-s)+st decreasing"));
    }
  } else if (c == "L4.7-gap") {
    const BigCount coef = BigCount((t + 1) * (t + 1) * (k - t + 1));
    for (long s = 0; s <= k - t - 2; ++s) {
      out.push_back(exact(c, with(with(pt, "part", 1), "s", s), Q(S(n - t - s - 1, k - t - s)), Rel::Gt,
                          Q(coef * S(n - t - s - 1, k - t - s - 1)),
                          "S(n-t-s-1,k-t-s) > (t+1)^2(k-t+1) S(n-t-s-1,k-t-s-1)"));
    }
    out.push_back(exact(c, with(pt, "part", 2), Q(S(n - t - 3, k - t - 1)), Rel::Gt,
                        Q(BigCount(t) * S(n - t - 2, k - t - 2)), "S(n-t-3,k-t-1) > t S(n-t-2,k-t-2)"));
  } else if (c == "L3.2-gap") {
    const BigCount coef = power((t + 1) * (k - t + 1), 2);
    for (long s = 0; s <= k - t - 2; ++s) {
      out.push_back(exact(c, with(pt, "s", s), Q(S(n - t - s, k - t - s)), Rel::Gt,
                          Q(coef * S(n - t - s - 1, k - t - s - 1)),
                          "S(n-t-s,k-t-s) > (t+1)^2(k-t+1)^2 S(n-t-s-1,k-t-s-1)"));
    }
  } else if (c == "L3.3-rlb") {
    BigRatio factor = BigRatio(k - t - 1) - make_ratio(1, (t + 1) * (t + 1));
    out.push_back(exact(c, with(pt, "part", 1), Q(r), Rel::Gt, factor * Q(S(n - t - 1, k - t - 1)) + BigRatio(t),
                        "r > (k-t-1-1/(t+1)^2) S(n-t-1,k-t-1) + t"));
    if (k == t + 3) {
      out.push_back(exact(c, with(pt, "part", 2), Q(r), Rel::Gt, make_ratio(9, 4) * Q(S(n - t - 1, 2)) + BigRatio(t),
                          "r(n,t+3,t) > 9/4 S(n-t-1,2) + t"));
      out.push_back(exact(c, with(pt, "part", 3), Q(r), Rel::Eq,
                          make_ratio(5, 2) * Q(S(n - t - 1, 2)) + BigRatio(t) - make_ratio(7, 2),
                          "r(n,t+3,t) = 5/2 S(n-t-1,2) + t - 7/2"));
    }
  } else if (c == "L4.8-u1u2") {
    out.push_back(exact(c, with(pt, "part", 1), Q(u1(n, k, t)), Rel::Lt, Q(r), "u1 < r"));
    out.push_back(exact(c, with(pt, "part", 2), Q(u2(n, k, t)), Rel::Lt, Q(r), "u2 < r"));
  } else if (c == "L4.9-hh1") {
    const BigCount h = size_hm_named(n, k, t);
    const BigCount h1 = size_h1(n, k, t);
    out.push_back(exact(c, with(pt, "part", 0), Q(r), Rel::Lt, Q(h), "r < |H|"));
    out.push_back(exact(c, with(pt, "part", 1), Q(r), Rel::Le, Q(h1), "r <= |H1|"));
    out.push_back(exact(c, with(pt, "part", 2), Q(h1), Rel::Lt, Q(h), "|H1| < |H|"));
    if (k >= 2 * t + 3) {
      out.push_back(exact(c, with(pt, "part", 3), Q(size_alpha_named(n, k, t)), Rel::Lt, Q(r), "|A| < r"));
    }
  } else if (c == "L4.10-trichotomy") {
    const BigRatio a = Q(size_alpha_named(n, k, t));
    const BigRatio h = Q(size_hm_named(n, k, t));
    if (k >= 2 * t + 3) {
      out.push_back(exact(c, pt, h, Rel::Gt, a, "|H| > |A| for k >= 2t+3"));
    } else if (k == 4 && t == 1) {
      out.push_back(exact(c, pt, h, Rel::Eq, a, "|H| = |A| for (k,t) = (4,1)"));
    } else {
      out.push_back(exact(c, pt, a, Rel::Gt, h, "|A| > |H| for k <= 2t+2"));
    }
  }
  return out;
}

// Sampled families -----------------------------------------------------------

struct Sample {
  GroundParams params;
  Family family;
  std::string source;
};

std::mt19937_64 instance_rng(const VerifyGrid& grid, std::string_view claim, long instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(grid.seed), static_cast<std::uint32_t>(grid.seed >> 32),
                    static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(claim.size()),
                    static_cast<std::uint32_t>(claim.back())};
  return std::mt19937_64(seq);
}

std::size_t pick(std::mt19937_64& rng, std::size_t count) { return static_cast<std::size_t>(rng() % count); }

Sample sample_family(std::mt19937_64& rng, const std::vector<GroundParams>& configs) {
  Sample out;
  out.params = configs[pick(rng, configs.size())];
  const GroundParams& p = out.params;
  std::vector<FamilySpec> specs = {FamilySpec::named_star(p), FamilySpec::named_alpha(p), FamilySpec::named_hm(p)};
  if (p.n >= p.k + 2) specs.push_back(FamilySpec::named_h1(p));
  const std::size_t which = pick(rng, specs.size());
  static constexpr const char* kNames[] = {"star", "alpha", "hm", "h1"};
  Family full = materialize(specs[which]);
  const std::uint64_t keep_tenths = 1 + rng() % 10;
  std::vector<SetPartition> kept;
  for (const SetPartition& m : full) {
    if (rng() % 10 < keep_tenths) kept.push_back(m);
  }
  if (kept.empty()) kept.push_back(full.members()[pick(rng, full.size())]);
  out.family = Family(p, std::move(kept));
  out.source = std::string(kNames[which]) + " keep=" + std::to_string(keep_tenths) + "/10";
  return out;
}

std::size_t count_containing(const Family& f, const std::vector<Block>& blocks) {
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [&](const SetPartition& m) {
    return std::all_of(blocks.begin(), blocks.end(), [&](Block b) { return m.has_block(b); });
  }));
}

template <typename Fn>
void for_each_subset(const std::vector<Block>& items, std::size_t size, Fn&& fn) {
  const std::size_t m = items.size();
  if (size > m) return;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
    std::vector<Block> chosen;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) chosen.push_back(items[i]);
    }
    fn(chosen);
  }
}

std::vector<VerdictRecord> check_inductive(std::string_view c, const Point& pt, const VerifyGrid& grid) {
  static const std::vector<GroundParams> configs = {{6, 3, 1}, {7, 3, 1}, {8, 3, 1}, {6, 4, 1},
                                                     {7, 4, 1}, {7, 4, 2}, {8, 4, 2}};
  std::mt19937_64 rng = instance_rng(grid, c, get(pt, "instance"));
  Sample sample = sample_family(rng, configs);
  const Family& f = sample.family;
  const auto [n, k, t] = sample.params;
  const SetPartition& tm = f.members()[pick(rng, f.size())];
  std::vector<Block> tblocks(tm.blocks().begin(), tm.blocks().end());
  const SetPartition& g = f.members()[pick(rng, f.size())];
  std::vector<Block> s;
  for (Block b : g.blocks()) {
    if (rng() % 2 == 0) s.push_back(b);
  }
  auto in_t = [&](Block b) { return tm.has_block(b); };
  while (std::count_if(s.begin(), s.end(), in_t) >= t) {
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (in_t(s[i])) shared.push_back(i);
    }
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(shared[pick(rng, shared.size())]));
  }
  const long ell = static_cast<long>(tblocks.size());
  const long sz = static_cast<long>(s.size());
  const long r = std::count_if(s.begin(), s.end(), in_t);
  std::uint64_t s_support = 0;
  for (Block b : s) s_support |= b.mask();
  std::vector<Block> extra;
  for (Block b : tblocks) {
    if ((b.mask() & s_support) == 0) extra.push_back(b);
  }
  std::size_t best = 0, h_count = 0;
  for_each_subset(extra, static_cast<std::size_t>(t - r), [&](const std::vector<Block>& y) {
    std::vector<Block> h = s;
    h.insert(h.end(), y.begin(), y.end());
    best = std::max(best, count_containing(f, h));
    ++h_count;
  });
  const std::size_t fs = count_containing(f, s);
  const BigCount coef = binomial(ell - r, t - r);
  std::string what = sample.source + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " t=" + std::to_string(t) +
                     " s=" + std::to_string(sz) + " r=" + std::to_string(r);
  std::vector<VerdictRecord> out;
  out.push_back(exact(c, with(pt, "part", 1), Q(BigCount(fs)), Rel::Le, Q(coef * BigCount(best)),
                      "|F_S| <= C(l-r,t-r) max_H |F_H|; " + what));
  out.push_back(exact(c, with(pt, "part", 2), Q(BigCount(h_count)), Rel::Le, Q(coef),
                      "number of H <= C(l-r,t-r); " + what));
  if (t + sz - r < k) {
    out.push_back(exact(c, with(pt, "part", 3), Q(BigCount(fs)), Rel::Le,
                        Q(coef * S(n - sz - t + r, k - sz - t + r)),
                        "|F_S| <= C(l-r,t-r) S(n-s-t+r,k-s-t+r); " + what));
  }
  return out;
}

std::vector<VerdictRecord> check_key(std::string_view c, const Point& pt, const VerifyGrid& grid) {
  static const std::vector<GroundParams> configs = {{10, 3, 1}, {11, 3, 1}};
  std::mt19937_64 rng = instance_rng(grid, c, get(pt, "instance"));
  Sample sample = sample_family(rng, configs);
  const Family& f = sample.family;
  const auto [n, k, t] = sample.params;
  const std::uint64_t keep_tenths = 1 + rng() % 10;
  std::vector<SetPartition> covers;
  for (const SetPartition& m : f) {
    if (rng() % 10 < keep_tenths) covers.push_back(m);
  }
  if (covers.empty()) covers.push_back(f.members()[pick(rng, f.size())]);
  const long tau = covering_number(Family(sample.params, covers), t).tau;

  std::set<std::vector<std::uint64_t>> seen;
  std::size_t worst = 0;
  for (const SetPartition& m : f) {
    std::vector<Block> blocks(m.blocks().begin(), m.blocks().end());
    for_each_subset(blocks, static_cast<std::size_t>(t), [&](const std::vector<Block>& h) {
      std::vector<std::uint64_t> key;
      for (Block b : h) key.push_back(b.mask());
      if (!seen.insert(key).second) return;
      worst = std::max(worst, count_containing(f, h));
    });
  }
  BigCount first = power(k - t + 1, static_cast<unsigned long>(tau - t)) * S(n - tau, k - tau);
  BigCount second = power(k - t + 1, static_cast<unsigned long>(k - t));
  std::string what = sample.source + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " t=" + std::to_string(t) +
                     " |G|=" + std::to_string(covers.size()) + " tau=" + std::to_string(tau);
  return {exact(c, pt, Q(BigCount(worst)), Rel::Le, Q(std::max(first, second)),
                "max_H |F_H| <= max{(k-t+1)^(tau-t) S(n-tau,k-tau), (k-t+1)^(k-t)}; " + what)};
}

// Formula identities ---------------------------------------------------------

std::string describe(const FamilySpec& spec) {
  std::string out = std::string(to_string(spec.kind)) + " " + to_string(spec.anchor);
  if (spec.kind == FamilyKind::HM) out += " X=" + to_string(spec.core);
  return out;
}

std::vector<VerdictRecord> check_sizes(std::string_view c, const Point& pt) {
  GroundParams p{static_cast<int>(get(pt, "n")), static_cast<int>(get(pt, "k")), static_cast<int>(get(pt, "t"))};
  std::vector<FamilySpec> specs = anchor_shape_specs(p);
  std::vector<std::uint64_t> counts(specs.size(), 0);
  for (const SetPartition& part : partitions(p.n, p.k)) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (is_member(specs[i], part)) ++counts[i];
    }
  }
  std::vector<VerdictRecord> out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out.push_back(exact(c, with(pt, "shape", static_cast<long>(i)), Q(BigCount(counts[i])), Rel::Eq,
                        Q(closed_form_size(specs[i])),
                        "enumerated size = " + closed_form_name(specs[i]) + " formula; " + describe(specs[i])));
  }
  return out;
}

// Grid parsing ---------------------------------------------------------------

long parse_long(std::string_view text, std::string_view key) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw GridError("bad value for grid key " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

Range parse_range(std::string_view text, std::string_view key) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    long v = parse_long(text, key);
    return {v, v};
  }
  return {parse_long(text.substr(0, colon), key), parse_long(text.substr(colon + 1), key)};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw GridError(message);
}

void require_range(const Range& r, long min_lo, long max_hi, std::string_view key) {
  require(r.lo <= r.hi, "empty range for " + std::string(key));
  require(r.lo >= min_lo, std::string(key) + " must be >= " + std::to_string(min_lo));
  require(r.hi <= max_hi, std::string(key) + " must be <= " + std::to_string(max_hi));
}

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const ClaimInfo& c : registry()) out.push_back(c.id);
    return out;
  }();
  return ids;
}

void require_claim(std::string_view id) { (void)info(id); }

void VerifyGrid::validate() const {
  require_range(t, 1, 20, "t");
  require_range(kt, 2, 20, "kt");
  require_range(dn, 0, 200, "dn");
  require(n_max >= 2 && n_max <= 200, "nmax must lie in [2, 200]");
  require(l_max >= 1 && l_max <= 200, "lmax must lie in [1, 200]");
  require(s_max >= 2 && s_max <= 200, "smax must lie in [2, 200]");
  require(samples >= 0 && samples <= 100000, "samples must lie in [0, 100000]");
  require_range(fs_t, 1, 10, "fs_t");
  require(fs_k_max <= fs_n_max, "fs_kmax must not exceed fs_nmax");
  require(fs_n_max <= 13, "fs_nmax must be <= 13");
}

std::string VerifyGrid::canonical() const {
  auto range = [](const Range& r) { return std::to_string(r.lo) + ":" + std::to_string(r.hi); };
  return "t=" + range(t) + ",kt=" + range(kt) + ",dn=" + range(dn) + ",nmax=" + std::to_string(n_max) +
         ",lmax=" + std::to_string(l_max) + ",smax=" + std::to_string(s_max) + ",samples=" + std::to_string(samples) +
         ",seed=" + std::to_string(seed) + ",fs_t=" + range(fs_t) + ",fs_kmax=" + std::to_string(fs_k_max) +
         ",fs_nmax=" + std::to_string(fs_n_max);
}

VerifyGrid parse_grid(std::string_view text) {
  VerifyGrid grid;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (item.empty() || item == "default") continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw GridError("grid item without '=': '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    if (key == "t") {
      grid.t = parse_range(value, key);
    } else if (key == "kt") {
      grid.kt = parse_range(value, key);
    } else if (key == "dn") {
      grid.dn = parse_range(value, key);
    } else if (key == "nmax") {
      grid.n_max = parse_long(value, key);
    } else if (key == "lmax") {
      grid.l_max = parse_long(value, key);
    } else if (key == "smax") {
      grid.s_max = parse_long(value, key);
    } else if (key == "samples") {
      grid.samples = parse_long(value, key);
    } else if (key == "seed") {
      long seed = parse_long(value, key);
      require(seed >= 0, "seed must be non-negative");
      grid.seed = static_cast<std::uint64_t>(seed);
    } else if (key == "fs_t") {
      grid.fs_t = parse_range(value, key);
    } else if (key == "fs_kmax") {
      grid.fs_k_max = parse_long(value, key);
    } else if (key == "fs_nmax") {
      grid.fs_n_max = parse_long(value, key);
    } else {
      throw GridError("unknown grid key: " + std::string(key));
    }
  }
  grid.validate();
  return grid;
}

std::vector<Point> grid_points(std::string_view claim, const VerifyGrid& grid) {
  const ClaimInfo& c = info(claim);
  grid.validate();
  std::vector<Point> out;
  if (c.threshold != Threshold::None) {
    for (long t = grid.t.lo; t <= grid.t.hi; ++t) {
      for (long kt = std::max(grid.kt.lo, c.min_kt); kt <= grid.kt.hi; ++kt) {
        const long k = t + kt;
        const long base = threshold_n(c.threshold, k, t);
        for (long dn = grid.dn.lo; dn <= grid.dn.hi; ++dn) out.push_back({{"n", base + dn}, {"k", k}, {"t", t}});
      }
    }
  } else if (claim == "L2.1-ratio") {
    for (long n = 2; n <= grid.n_max; ++n) {
      for (long k = 2; k <= n; ++k) out.push_back({{"n", n}, {"k", k}});
    }
  } else if (claim == "L4.3-RD") {
    for (long n = 2; n <= grid.n_max; ++n) {
      for (long r = 1; r < n; ++r) out.push_back({{"n", n}, {"r", r}});
    }
  } else if (claim == "L4.1-binom") {
    for (long l = 1; l <= grid.l_max; ++l) {
      for (long t = 1; t <= l; ++t) {
        for (long r = 1; r <= t; ++r) out.push_back({{"l", l}, {"t", t}, {"r", r}});
      }
    }
  } else if (claim == "L4.2-Q") {
    for (long t = grid.t.lo; t <= grid.t.hi; ++t) {
      for (long s = 2; s <= grid.s_max; ++s) out.push_back({{"s", s}, {"t", t}});
    }
  } else if (claim == "L2.2-inductive" || claim == "L2.3-key") {
    for (long i = 0; i < grid.samples; ++i) out.push_back({{"instance", i}});
  } else if (claim == "F-sizes") {
    for (long t = grid.fs_t.lo; t <= grid.fs_t.hi; ++t) {
      for (long k = t + 2; k <= grid.fs_k_max; ++k) {
        for (long n = k; n <= grid.fs_n_max; ++n) out.push_back({{"n", n}, {"k", k}, {"t", t}});
      }
    }
  }
  return out;
}

std::vector<VerdictRecord> check_point(std::string_view claim, const Point& point, const VerifyGrid& grid) {
  const ClaimInfo& c = info(claim);
  if (c.threshold != Threshold::None) return check_threshold_claim(claim, point);
  if (claim == "L2.1-ratio") {
    const long n = get(point, "n"), k = get(point, "k");
    BigRatio lhs = power(make_ratio(S(n, k), S(n - 1, k - 1)) + BigRatio(1), static_cast<unsigned long>(k - 1));
    VerdictRecord rec = exact(claim, point, lhs, Rel::Ge, Q(power(2, static_cast<unsigned long>(n - 1))),
                              "(S(n,k)/S(n-1,k-1)+1)^(k-1) >= 2^(n-1)");
    if (rec.pass != ratio_bound_holds(n, k)) throw std::logic_error("ratio bound evaluations disagree");
    return {rec};
  }
  if (claim == "L4.3-RD") {
    const long n = get(point, "n"), r = get(point, "r");
    return {exact(claim, point, Q(S(n, r)), Rel::Ge, rennie_dobson_lower(n, r), "S(n,r) >= (r^2+r+2) r^(n-r-1)/2 - 1")};
  }
  if (claim == "L4.1-binom") {
    const long l = get(point, "l"), t = get(point, "t"), r = get(point, "r");
    return {exact(claim, point, Q(binomial(l - r, t - r)), Rel::Le,
                  Q(power(l - t + 1, static_cast<unsigned long>(t - r))), "C(l-r,t-r) <= (l-t+1)^(t-r)")};
  }
  if (claim == "L4.2-Q") {
    const long s = get(point, "s"), t = get(point, "t");
    std::vector<VerdictRecord> out;
    if ((s & (s - 1)) == 0) {
      out.push_back(exact(claim, with(point, "part", 1), q_exact(s, t), Rel::Ge, BigRatio(18), "Q(s,t) >= 18"));
    } else {
      VerdictRecord rec = interval_gt(
          claim, with(point, "part", 1), [&](mpfr_prec_t p) { return log2_q(s, t, p); },
          [&](mpfr_prec_t p) { return Interval(BigRatio(18), p).log2(); }, "log2 Q(s,t) > log2 18");
      out.push_back(std::move(rec));
    }
    out.push_back(interval_gt(
        claim, with(point, "part", 2), [&](mpfr_prec_t p) { return log2_q(s + 1, t, p); },
        [&](mpfr_prec_t p) { return log2_q(s, t, p); }, "log2 Q(s+1,t) > log2 Q(s,t)"));
    return out;
  }
  if (claim == "L2.2-inductive") return check_inductive(claim, point, grid);
  if (claim == "L2.3-key") return check_key(claim, point, grid);
  if (claim == "F-sizes") return check_sizes(claim, point);
  throw UnknownClaim("unknown claim id: " + std::string(claim));
}

std::vector<VerdictRecord> check(std::string_view claim, const VerifyGrid& grid, int workers) {
  std::vector<Point> points = grid_points(claim, grid);
  std::vector<std::vector<VerdictRecord>> slots(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) { slots[i] = check_point(claim, points[i], grid); });
  std::vector<VerdictRecord> out;
  for (auto& slot : slots) {
    for (VerdictRecord& rec : slot) out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ClaimSummary> summarize(const std::vector<VerdictRecord>& records) {
  std::vector<ClaimSummary> out;
  for (const std::string& id : claim_ids()) {
    ClaimSummary sum;
    sum.claim = id;
    for (const VerdictRecord& rec : records) {
      if (rec.claim != id) continue;
      ++sum.total;
      ++(rec.pass ? sum.passes : sum.failures);
      if (rec.tight) ++sum.tight_points;
    }
    if (sum.total > 0) out.push_back(std::move(sum));
  }
  return out;
}

nlohmann::json to_json(const VerdictRecord& record) {
  nlohmann::json point = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::array();
  for (const auto& [name, value] : record.point) {
    point[name] = value;
    order.push_back(name);
  }
  return {{"claim", record.claim}, {"point", point},         {"point_order", order},
          {"lhs", record.lhs},     {"rhs", record.rhs},      {"pass", record.pass},
          {"tight", record.tight}, {"mode", to_string(record.mode)}, {"note", record.note}};
}

VerdictRecord record_from_json(const nlohmann::json& j) {
  VerdictRecord rec;
  rec.claim = j.at("claim").get<std::string>();
  for (const auto& name : j.at("point_order")) {
    std::string key = name.get<std::string>();
    rec.point.emplace_back(key, j.at("point").at(key).get<long>());
  }
  rec.lhs = j.at("lhs").get<std::string>();
  rec.rhs = j.at("rhs").get<std::string>();
  rec.pass = j.at("pass").get<bool>();
  rec.tight = j.value("tight", false);
  rec.mode = j.at("mode").get<std::string>() == "interval" ? ArithmeticMode::Interval : ArithmeticMode::Exact;
  rec.note = j.value("note", "");
  return rec;
}

nlohmann::json to_json(const ClaimSummary& summary) {
  return {{"claim", summary.claim},
          {"total", summary.total},
          {"passes", summary.passes},
          {"failures", summary.failures},
          {"tight_points", summary.tight_points}};
}

BigCount bonferroni_truncation(const IntersectionTable& table, int s) {
  if (table.m < 0 || table.m > 62) throw std::invalid_argument("bonferroni needs 0 <= m <= 62");
  if (s < 0) throw std::invalid_argument("bonferroni needs s >= 0");
  const int depth = std::min(s, table.m);
  BigCount sum = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << table.m); ++mask) {
    const int j = std::popcount(mask);
    if (j > depth) continue;
    auto it = table.sizes.find(mask);
    if (it == table.sizes.end()) {
      throw std::invalid_argument("intersection table lacks the entry for index set mask " + std::to_string(mask));
    }
    if (j % 2 == 1) {
      sum += it->second;
    } else {
      sum -= it->second;
    }
  }
  return sum;
}

std::pair<BigCount, BigCount> bonferroni(const IntersectionTable& table, int s) {
  if (s < 1) throw std::invalid_argument("bonferroni needs s >= 1");
  if (s >= table.m) {
    BigCount exact_union = bonferroni_truncation(table, table.m);
    return {exact_union, exact_union};
  }
  BigCount here = bonferroni_truncation(table, s);
  BigCount before = bonferroni_truncation(table, s - 1);
  return s % 2 == 1 ? std::make_pair(before, here) : std::make_pair(here, before);
}

}  // namespace kpart
