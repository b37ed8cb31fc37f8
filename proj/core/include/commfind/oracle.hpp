#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "commfind/graph.hpp"

namespace commfind {

/// Default cap on recursion nodes or scanned subsets for the oracles.
inline constexpr std::uint64_t kOracleBudget = 10'000'000;

/// All maximal cliques with at least min_size nodes, sorted. Pivoting
/// Bron–Kerbosch; meant for graphs of a few hundred nodes at most.
std::vector<NodeSet> enumerate_maximal_cliques(const Graph& g, std::size_t min_size,
                                               std::uint64_t budget = kOracleBudget);

/// Every nonempty node subset of at least min_size nodes that is an
/// (alpha, alpha_out)-set, by scanning all 2^n subsets. n must be <= 20.
std::vector<NodeSet> enumerate_alpha_epsilon_sets(const Graph& g, double alpha, double alpha_out,
                                                  std::size_t min_size,
                                                  Counting counting = Counting::kSelfInclusive,
                                                  std::uint64_t budget = kOracleBudget);

/// Row-major n x n table of |Γ(u) ∩ Γ(v)|, by a direct double loop over
/// adjacency. The diagonal holds degrees. n must be <= 2000.
class PathCounts {
 public:
  explicit PathCounts(const Graph& g);

  std::size_t node_count() const { return n_; }
  std::uint32_t at(NodeId u, NodeId v) const { return counts_[u * n_ + v]; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> counts_;
};

PathCounts count_length2_paths_matrix(const Graph& g);

}  // namespace commfind
