#pragma once

// Registry of the numeric lemmas and formula identities, each checked over a
// parameter grid with exact rational arithmetic or certified intervals, and
// the truncated inclusion-exclusion (Bonferroni) bounds.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kpart/bignum.hpp"
#include "kpart/verdict.hpp"

namespace kpart {

class UnknownClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Claim ids in registry order.
const std::vector<std::string>& claim_ids();
/// Throws UnknownClaim for ids outside the registry.
void require_claim(std::string_view id);

struct Range {
  long lo = 0;
  long hi = 0;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Parameter ranges shared by all claims. Threshold claims run over t, k-t
/// and dn = n - threshold(k,t); the others use their own bounds.
struct VerifyGrid {
  Range t{1, 6};
  Range kt{2, 10};
  Range dn{0, 15};
  /// L2.1-ratio and L4.3-RD: n <= n_max.
  long n_max = 60;
  /// L4.1-binom: l <= l_max.
  long l_max = 20;
  /// L4.2-Q: 2 <= s <= s_max.
  long s_max = 12;
  /// L2.2-inductive and L2.3-key: random instances per claim.
  long samples = 40;
  std::uint64_t seed = 1;
  /// F-sizes: t in fs_t, t+2 <= k <= fs_k_max, k <= n <= fs_n_max.
  Range fs_t{1, 2};
  long fs_k_max = 5;
  long fs_n_max = 11;

  /// Throws GridError for ranges outside every claim's hypotheses.
  void validate() const;
  /// "key=lo:hi,..." covering every field, for hashing and headers.
  std::string canonical() const;

  friend bool operator==(const VerifyGrid&, const VerifyGrid&) = default;
};

/// "default", or comma-separated overrides of the defaults such as
/// "t=1:3,kt=2:5,dn=0:4,seed=7" (a single value means lo = hi).
VerifyGrid parse_grid(std::string_view text);

using Point = std::vector<std::pair<std::string, long>>;

/// Grid points of a claim in canonical order. Points outside the claim's
/// hypotheses (for instance k < t+4 for L4.5-t2small) are left out.
std::vector<Point> grid_points(std::string_view claim, const VerifyGrid& grid);

/// Records for one point; multi-part claims give one record per part.
std::vector<VerdictRecord> check_point(std::string_view claim, const Point& point, const VerifyGrid& grid);

/// Every record of the claim over the grid, in canonical order for any
/// worker count.
std::vector<VerdictRecord> check(std::string_view claim, const VerifyGrid& grid, int workers = 1);

struct ClaimSummary {
  std::string claim;
  std::uint64_t total = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::uint64_t tight_points = 0;
};

/// One summary per claim present, in registry order.
std::vector<ClaimSummary> summarize(const std::vector<VerdictRecord>& records);

nlohmann::json to_json(const VerdictRecord& record);
VerdictRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClaimSummary& summary);

/// |∩_{j in J} A_j| for index sets J given as bit masks over [m].
struct IntersectionTable {
  int m = 0;
  std::map<std::uint64_t, BigCount> sizes;
};

/// sum_{j=1}^{s} (-1)^{j-1} sum_{|J| = j} |∩_J A|. Throws
/// std::invalid_argument when the table lacks some J with |J| <= min(s, m).
BigCount bonferroni_truncation(const IntersectionTable& table, int s);

/// (lower, upper) bounds on |∪A| from the truncations at s and s-1: the odd
/// one is an upper bound and the even one a lower bound (truncation 0 is 0).
/// Both equal the union once s >= m.
std::pair<BigCount, BigCount> bonferroni(const IntersectionTable& table, int s);

}  // namespace kpart
