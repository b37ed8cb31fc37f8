#include "commfind/rng.hpp"

#include <vector>

#include "commfind/errors.hpp"

namespace commfind {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::uint64_t x = splitmix64(master_seed) ^ splitmix64(~stream_index + 0x5851f42d4c957f2dULL);
  for (auto& word : state_) {
    x += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(x);
  }
}

std::uint64_t RngStream::next_u64() {
  const auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("RngStream::below requires a positive bound");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

std::uint64_t derive_stream_index(std::uint64_t parent, std::uint64_t child) {
  return splitmix64(parent ^ splitmix64(child + 0x632be59bd9b4e019ULL));
}

NodeSet bernoulli_subsample(const NodeSet& s, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInputError("bernoulli_subsample requires 0 <= p <= 1");
  }
  std::vector<NodeId> kept;
  for (NodeId v : s) {
    if (rng.bernoulli(p)) kept.push_back(v);
  }
  return NodeSet::from_sorted(std::move(kept));
}

}  // namespace commfind
