#include "kpart/verdict.hpp"

namespace kpart {

std::string_view to_string(ArithmeticMode mode) { return mode == ArithmeticMode::Exact ? "exact" : "interval"; }

std::string VerdictRecord::key() const {
  std::string out = claim;
  for (const auto& [name, value] : point) {
    out += '|';
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

}  // namespace kpart
