#include "kpart/enumerate.hpp"

#include <algorithm>

namespace kpart {

bool prefix_feasible(int n, int k, std::span<const std::uint8_t> prefix) {
  if (k < 1 || k > n || prefix.empty() || static_cast<int>(prefix.size()) > n || prefix[0] != 0) {
    return false;
  }
  int max_seen = -1;
  for (std::uint8_t v : prefix) {
    if (static_cast<int>(v) > max_seen + 1 || static_cast<int>(v) > k - 1) {
      return false;
    }
    max_seen = std::max(max_seen, static_cast<int>(v));
  }
  int remaining = n - static_cast<int>(prefix.size());
  return max_seen + remaining >= k - 1;
}

PartitionStream::PartitionStream(int n, int k) : PartitionStream(EnumerationRange{n, k, {0}}) {}

PartitionStream::PartitionStream(const EnumerationRange& range) : n_(range.n), k_(range.k) {
  if (n_ < 1 || n_ > kMaxGround) {
    throw std::invalid_argument("ground set size must lie in [1, 64]");
  }
  std::vector<std::uint8_t> prefix = range.prefix.empty() ? std::vector<std::uint8_t>{0} : range.prefix;
  fixed_ = prefix.size();
  if (!prefix_feasible(n_, k_, prefix)) {
    done_ = true;
    return;
  }
  word_.assign(static_cast<std::size_t>(n_), 0);
  prefix_max_.assign(static_cast<std::size_t>(n_), 0);
  std::uint8_t m = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    word_[i] = prefix[i];
    m = std::max(m, prefix[i]);
    prefix_max_[i] = m;
  }
  fill_from(fixed_);
}

void PartitionStream::fill_from(std::size_t pos) {
  int m = prefix_max_[pos - 1];
  int remaining = n_ - static_cast<int>(pos);
  int need = (k_ - 1) - m;
  int zeros = remaining - need;
  for (std::size_t i = pos; i < word_.size(); ++i) {
    if (zeros > 0) {
      word_[i] = 0;
      --zeros;
    } else {
      word_[i] = static_cast<std::uint8_t>(++m);
    }
    prefix_max_[i] = static_cast<std::uint8_t>(m);
  }
}

void PartitionStream::advance() {
  if (done_) {
    return;
  }
  for (std::size_t i = word_.size(); i-- > fixed_;) {
    int pm = prefix_max_[i - 1];
    int limit = std::min(k_ - 1, pm + 1);
    int tail = n_ - 1 - static_cast<int>(i);
    for (int v = word_[i] + 1; v <= limit; ++v) {
      int new_max = std::max(pm, v);
      if (new_max + tail >= k_ - 1) {
        word_[i] = static_cast<std::uint8_t>(v);
        prefix_max_[i] = static_cast<std::uint8_t>(new_max);
        if (i + 1 < word_.size()) {
          fill_from(i + 1);
        }
        return;
      }
    }
  }
  done_ = true;
}

PartitionRange partitions(int n, int k) { return PartitionRange(PartitionStream(n, k)); }

PartitionRange partitions(const EnumerationRange& range) { return PartitionRange(PartitionStream(range)); }

std::vector<SetPartition> enumerate_partitions(const GroundParams& p) {
  std::vector<SetPartition> out;
  for (PartitionStream s(p.n, p.k); !s.done(); s.advance()) {
    out.push_back(s.current());
  }
  return out;
}

std::uint64_t count_by_walking(const EnumerationRange& range) {
  std::uint64_t count = 0;
  for (PartitionStream s(range); !s.done(); s.advance()) {
    ++count;
  }
  return count;
}

std::vector<EnumerationRange> split_by_prefix(int n, int k, int prefix_len) {
  if (prefix_len < 1 || prefix_len > n) {
    throw std::invalid_argument("prefix length must lie in [1, n]");
  }
  std::vector<EnumerationRange> out;
  // Depth-first over prefixes in lexicographic order.
  std::vector<std::uint8_t> prefix{0};
  auto recurse = [&](auto&& self, int max_seen) -> void {
    if (!prefix_feasible(n, k, prefix)) {
      return;
    }
    if (static_cast<int>(prefix.size()) == prefix_len) {
      out.push_back(EnumerationRange{n, k, prefix});
      return;
    }
    for (int v = 0; v <= std::min(max_seen + 1, k - 1); ++v) {
      prefix.push_back(static_cast<std::uint8_t>(v));
      self(self, std::max(max_seen, v));
      prefix.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<EnumerationRange> split_by_prefix(const GroundParams& p, int prefix_len) {
  return split_by_prefix(p.n, p.k, prefix_len);
}

}  // namespace kpart
