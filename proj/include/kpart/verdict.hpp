#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kpart {

enum class ArithmeticMode { Exact, Interval };

std::string_view to_string(ArithmeticMode mode);

/// One checked claim at one parameter point. lhs and rhs are exact rationals
/// in decimal form, or "[lo, hi]" enclosures in interval mode.
struct VerdictRecord {
  std::string claim;
  std::vector<std::pair<std::string, long>> point;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  bool tight = false;
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::string note;

  /// "claim|key=value|..." identifying the record in caches.
  std::string key() const;
};

}  // namespace kpart
