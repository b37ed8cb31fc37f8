#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace commfind::detail {

/// Fixed-width bitset over a local universe; the width is set at
/// construction and all binary operations assume equal widths.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  BitSet& operator&=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitSet& operator|=(const BitSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  static std::size_t and_count(const BitSet& a, const BitSet& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    }
    return c;
  }

  /// True iff every bit of this is also set in o.
  bool subset_of(const BitSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(i * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const BitSet&, const BitSet&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& b) const { return b.hash(); }
};

}  // namespace commfind::detail
