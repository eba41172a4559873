#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "kpart/partition.hpp"

namespace kpart {

/// A class of k-partitions of [n] whose restricted growth strings start with
/// a fixed prefix. The empty prefix and the prefix "0" both mean "all".
struct EnumerationRange {
  int n = 0;
  int k = 0;
  std::vector<std::uint8_t> prefix;

  friend bool operator==(const EnumerationRange&, const EnumerationRange&) = default;
};

/// Walks the k-partitions of [n] in lexicographic rgs order. Each symbol is
/// at most 1 + the prefix maximum; branches that can no longer reach k
/// distinct symbols are never entered.
class PartitionStream {
 public:
  PartitionStream(int n, int k);
  explicit PartitionStream(const EnumerationRange& range);

  bool done() const { return done_; }
  void advance();
  std::span<const std::uint8_t> rgs() const { return word_; }
  SetPartition current() const { return SetPartition(word_); }

 private:
  void fill_from(std::size_t pos);

  int n_;
  int k_;
  std::size_t fixed_;
  std::vector<std::uint8_t> word_;
  std::vector<std::uint8_t> prefix_max_;
  bool done_ = false;
};

/// Input range adaptor so that `for (const SetPartition& p : partitions(n, k))` works.
class PartitionRange {
 public:
  class iterator {
   public:
    using value_type = SetPartition;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(PartitionStream* stream) : stream_(stream) {
      if (stream_ != nullptr && !stream_->done()) current_ = stream_->current();
    }
    const SetPartition& operator*() const { return current_; }
    iterator& operator++() {
      stream_->advance();
      if (!stream_->done()) current_ = stream_->current();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return it.stream_ == nullptr || it.stream_->done();
    }

   private:
    PartitionStream* stream_ = nullptr;
    SetPartition current_;
  };

  explicit PartitionRange(PartitionStream stream) : stream_(std::move(stream)) {}
  iterator begin() { return iterator(&stream_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  PartitionStream stream_;
};

/// All k-partitions of [n]; empty when k > n or k < 1.
PartitionRange partitions(int n, int k);
PartitionRange partitions(const EnumerationRange& range);
std::vector<SetPartition> enumerate_partitions(const GroundParams& p);

/// Number of partitions a stream visits, counted by walking it.
std::uint64_t count_by_walking(const EnumerationRange& range);

/// Splits the rgs space into disjoint prefix classes of length prefix_len,
/// in lexicographic order; empty classes are omitted.
std::vector<EnumerationRange> split_by_prefix(const GroundParams& p, int prefix_len);
std::vector<EnumerationRange> split_by_prefix(int n, int k, int prefix_len);

/// Whether some k-partition of [n] has this rgs prefix.
bool prefix_feasible(int n, int k, std::span<const std::uint8_t> prefix);

}  // namespace kpart
