#pragma once

#include <cstdint>
#include <vector>

namespace uq {

// Counter-based seeded random stream. A stream is identified by
// (master_seed, stream_index); the same pair produces the same draw
// sequence on every platform, independent of thread count. Substreams
// derived via child() are statistically independent of the parent and
// of each other, which keeps per-tree / per-pass randomness deterministic
// under parallel scheduling.
//
// Internals: the (seed, index) pair is hashed into a 64-bit key with a
// SplitMix64-style mixer; the key seeds a xoshiro256++ generator. We do
// not use <random> distributions because their output is not specified
// bit-for-bit across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  // Derive an independent substream. child(i) != child(j) for i != j.
  RandomStream child(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (no cached spare, so the stream
  // position is a pure function of the number of calls).
  double normal();
  double normal(double mean, double stddev);

  // Uniform index in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;       // mixed (seed, index), used to derive children
  std::uint64_t state_[4];  // xoshiro256++ state
};

}  // namespace uq
