#pragma once

#include <cstdint>
#include <vector>

#include "commfind/graph.hpp"

namespace commfind {

/// Deterministic random stream keyed by (master_seed, stream_index).
///
/// Backed by xoshiro256** whose state is filled by splitmix64 from the key.
/// Detectors open a fresh stream per round, so seeding has to be cheap; a
/// Mersenne Twister reseed dominated round cost. All derived draws are
/// computed here rather than through the implementation-defined <random>
/// distributions, so the same key yields the same sequence on every
/// platform. Parallel work takes one stream per task; a stream is never
/// shared between threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_[4];
};

/// Composes a child stream index from a parent index and a sub-index so
/// nested tasks get distinct, reproducible streams.
std::uint64_t derive_stream_index(std::uint64_t parent, std::uint64_t child);

/// Includes each member of s independently with probability p, visiting
/// members in ascending id order and consuming exactly one draw per member.
NodeSet bernoulli_subsample(const NodeSet& s, double p, RngStream& rng);

/// Fisher-Yates shuffle driven by RngStream::below.
template <class T>
void shuffle(std::vector<T>& items, RngStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace commfind
