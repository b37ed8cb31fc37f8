#pragma once

#include "commfind/graph.hpp"
#include "detail/bitset.hpp"
#include "detail/local_view.hpp"

namespace commfind::detail {

struct TrimResult {
  BitSet kept;
  /// Least density among kept nodes; 0 when nothing is kept.
  double min_density = 0.0;
  std::size_t passes = 0;
};

/// Repeatedly drops every node whose density |row(x) ∩ V| / |V| is below
/// `remove_below` until all remaining nodes reach `exit_at`. Densities are
/// recomputed after each pass. Each pass removes at least one node, so the
/// loop ends after at most |V| passes.
inline TrimResult trim_by_density(const LocalView& view, BitSet v, double remove_below,
                                  double exit_at, bool self_inclusive) {
  TrimResult out;
  for (;;) {
    const std::size_t size = v.count();
    if (size == 0) break;
    bool done = true;
    double lowest = 1.0;
    std::vector<std::size_t> drop;
    v.for_each([&](std::size_t x) {
      const std::size_t inside = BitSet::and_count(view.row(x, self_inclusive), v);
      lowest = std::min(lowest, static_cast<double>(inside) / static_cast<double>(size));
      if (less_than(inside, size, exit_at)) done = false;
      if (less_than(inside, size, remove_below)) drop.push_back(x);
    });
    if (done) {
      out.min_density = lowest;
      break;
    }
    ++out.passes;
    for (std::size_t x : drop) v.reset(x);
  }
  out.kept = std::move(v);
  return out;
}

}  // namespace commfind::detail
