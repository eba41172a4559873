#include "kpart/partition.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace kpart {

namespace {

std::uint64_t ground_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void check_ground(int n) {
  if (n < 1 || n > kMaxGround) {
    throw std::invalid_argument("ground set size must lie in [1, 64], got " + std::to_string(n));
  }
}

// Validates and sorts blocks by minimum element; returns the union mask.
std::uint64_t sort_blocks(int n, std::vector<Block>& blocks) {
  check_ground(n);
  std::uint64_t seen = 0;
  for (Block b : blocks) {
    if (b.empty()) {
      throw std::invalid_argument("empty block");
    }
    if ((b.mask() & ~ground_mask(n)) != 0) {
      throw std::invalid_argument("block " + to_string(b) + " has an element outside [" +
                                  std::to_string(n) + "]");
    }
    if ((seen & b.mask()) != 0) {
      throw std::invalid_argument("overlapping blocks at " + to_string(b));
    }
    seen |= b.mask();
  }
  std::sort(blocks.begin(), blocks.end(),
            [](Block a, Block b) { return a.min_element() < b.min_element(); });
  return seen;
}

int parse_int(std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::invalid_argument("bad integer '" + std::string(token) + "' in partition literal");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

}  // namespace

void GroundParams::validate() const {
  if (!(1 <= t && t < k && k <= n && n <= kMaxGround)) {
    throw std::invalid_argument("parameters must satisfy 1 <= t < k <= n <= 64 (n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ", t=" + std::to_string(t) + ")");
  }
}

// ---------------------------------------------------------------------------
// Block

Block Block::of(std::initializer_list<int> elements) {
  return of(std::span<const int>(elements.begin(), elements.size()));
}

Block Block::of(std::span<const int> elements) {
  std::uint64_t mask = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGround) {
      throw std::invalid_argument("element " + std::to_string(e) + " outside [1, 64]");
    }
    mask |= std::uint64_t{1} << (e - 1);
  }
  return Block(mask);
}

Block Block::range(int first, int last) {
  std::uint64_t mask = 0;
  for (int e = first; e <= last; ++e) {
    mask |= std::uint64_t{1} << (e - 1);
  }
  return Block(mask);
}

std::vector<int> Block::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

std::strong_ordering operator<=>(Block a, Block b) {
  std::uint64_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) {
    return std::strong_ordering::equal;
  }
  int bit = std::countr_zero(diff);
  std::uint64_t above = ~((std::uint64_t{2} << bit) - 1);
  if (bit == 63) {
    above = 0;
  }
  if ((a.mask_ >> bit) & 1U) {
    // a holds the smaller next element unless b has ended already.
    return (b.mask_ & above) == 0 ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return (a.mask_ & above) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---------------------------------------------------------------------------
// PartialPartition

PartialPartition::PartialPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
  sort_blocks(n_, blocks_);
}

std::uint64_t PartialPartition::support() const {
  std::uint64_t out = 0;
  for (Block b : blocks_) out |= b.mask();
  return out;
}

bool PartialPartition::has_block(Block b) const {
  return std::find(blocks_.begin(), blocks_.end(), b) != blocks_.end();
}

std::strong_ordering operator<=>(const PartialPartition& a, const PartialPartition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                                b.blocks_.end());
}

// ---------------------------------------------------------------------------
// SetPartition

SetPartition::SetPartition(std::span<const std::uint8_t> rgs) : rgs_(rgs.begin(), rgs.end()) {
  check_ground(static_cast<int>(rgs_.size()));
  int max_seen = -1;
  for (std::uint8_t v : rgs_) {
    if (static_cast<int>(v) > max_seen + 1) {
      throw std::invalid_argument("not a restricted growth string");
    }
    max_seen = std::max(max_seen, static_cast<int>(v));
  }
  blocks_.assign(static_cast<std::size_t>(max_seen + 1), Block{});
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    blocks_[rgs_[i]] = Block(blocks_[rgs_[i]].mask() | (std::uint64_t{1} << i));
  }
  index_blocks();
}

SetPartition::SetPartition(int n, std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  std::uint64_t covered = sort_blocks(n, blocks_);
  if (covered != ground_mask(n)) {
    throw std::invalid_argument("blocks do not cover [" + std::to_string(n) + "]");
  }
  rgs_.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t label = 0; label < blocks_.size(); ++label) {
    for (int e : blocks_[label].elements()) {
      rgs_[static_cast<std::size_t>(e - 1)] = static_cast<std::uint8_t>(label);
    }
  }
  index_blocks();
}

void SetPartition::index_blocks() {
  by_mask_ = blocks_;
  std::sort(by_mask_.begin(), by_mask_.end(), [](Block a, Block b) { return a.mask() < b.mask(); });
}

bool SetPartition::has_block(Block b) const {
  auto it = std::lower_bound(by_mask_.begin(), by_mask_.end(), b,
                             [](Block x, Block y) { return x.mask() < y.mask(); });
  return it != by_mask_.end() && *it == b;
}

std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
  if (auto c = a.rgs_.size() <=> b.rgs_.size(); c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.rgs_.begin(), a.rgs_.end(), b.rgs_.begin(), b.rgs_.end());
}

// ---------------------------------------------------------------------------
// Free operations

Canonical canonicalize(int n, std::vector<Block> blocks) {
  std::uint64_t covered = sort_blocks(n, blocks);
  if (covered == ground_mask(n)) {
    return SetPartition(n, std::move(blocks));
  }
  return PartialPartition(n, std::move(blocks));
}

int common_blocks(const SetPartition& p, const SetPartition& q) {
  if (p.n() != q.n()) {
    throw std::invalid_argument("partitions of different ground sets");
  }
  auto a = p.blocks_by_mask();
  auto b = q.blocks_by_mask();
  std::size_t i = 0, j = 0;
  int shared = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].mask() < b[j].mask()) {
      ++i;
    } else if (b[j].mask() < a[i].mask()) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

int common_blocks(const PartialPartition& cover, const SetPartition& p) {
  if (cover.n() != p.n()) {
    throw std::invalid_argument("partitions of different ground sets");
  }
  int shared = 0;
  for (Block b : cover.blocks()) {
    shared += p.has_block(b) ? 1 : 0;
  }
  return shared;
}

int common_blocks(const PartialPartition& a, const PartialPartition& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("partitions of different ground sets");
  }
  int shared = 0;
  for (Block x : a.blocks()) {
    shared += b.has_block(x) ? 1 : 0;
  }
  return shared;
}

bool contains(const SetPartition& p, const PartialPartition& s) {
  if (s.n() != p.n()) {
    throw std::invalid_argument("partitions of different ground sets");
  }
  for (Block b : s.blocks()) {
    if (!p.has_block(b)) {
      return false;
    }
  }
  return true;
}

PartialPartition singletons_of(int n, std::uint64_t elements) {
  if (elements == 0) {
    throw std::invalid_argument("singletons_of needs a non-empty set");
  }
  std::vector<Block> blocks;
  for (std::uint64_t m = elements; m != 0; m &= m - 1) {
    blocks.emplace_back(m & -m);
  }
  return PartialPartition(n, std::move(blocks));
}

PartialPartition first_singletons(int n, int m) { return singletons_of(n, Block::range(1, m).mask()); }

std::string to_string(Block b) {
  std::string out;
  for (int e : b.elements()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e);
  }
  return out;
}

std::string to_string(const PartialPartition& p) {
  std::string out;
  for (Block b : p.blocks()) {
    if (!out.empty()) out += '|';
    out += to_string(b);
  }
  return out;
}

std::string to_string(const SetPartition& p) {
  std::string out;
  for (Block b : p.blocks()) {
    if (!out.empty()) out += '|';
    out += to_string(b);
  }
  return out;
}

Canonical parse_partition(std::string_view text, int n) {
  text = trim(text);
  if (text.empty()) {
    if (n < 1) throw std::invalid_argument("empty partition literal needs an explicit n");
    return PartialPartition(n, {});
  }
  bool rgs_form = text.find(',') != std::string_view::npos ||
                  (text.find('|') == std::string_view::npos && text.find(' ') == std::string_view::npos &&
                   text.front() == '0');
  if (rgs_form) {
    std::vector<std::uint8_t> word;
    for (std::string_view tok : split(text, ',')) {
      int v = parse_int(trim(tok));
      if (v < 0 || v >= kMaxGround) throw std::invalid_argument("rgs symbol out of range");
      word.push_back(static_cast<std::uint8_t>(v));
    }
    if (n != 0 && static_cast<int>(word.size()) != n) {
      throw std::invalid_argument("rgs length does not match n");
    }
    return SetPartition(word);
  }
  std::vector<Block> blocks;
  int max_element = 0;
  for (std::string_view part : split(text, '|')) {
    std::vector<int> elements;
    for (std::string_view tok : split(trim(part), ' ')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      elements.push_back(parse_int(tok));
    }
    if (elements.empty()) throw std::invalid_argument("empty block in partition literal");
    Block b = Block::of(elements);
    if (b.size() != static_cast<int>(elements.size())) {
      throw std::invalid_argument("repeated element in block");
    }
    max_element = std::max(max_element, b.max_element());
    blocks.push_back(b);
  }
  return canonicalize(n == 0 ? max_element : n, std::move(blocks));
}

SetPartition parse_set_partition(std::string_view text, int n) {
  Canonical c = parse_partition(text, n);
  if (auto* p = std::get_if<SetPartition>(&c)) {
    return *p;
  }
  throw std::invalid_argument("'" + std::string(text) + "' does not cover the ground set");
}

PartialPartition parse_partial(std::string_view text, int n) {
  Canonical c = parse_partition(text, n);
  if (auto* p = std::get_if<SetPartition>(&c)) {
    return p->as_partial();
  }
  return std::get<PartialPartition>(c);
}

}  // namespace kpart
