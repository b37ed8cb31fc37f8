#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace commfind {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free set of node ids.
class NodeSet {
 public:
  using const_iterator = std::vector<NodeId>::const_iterator;

  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids);

  /// Sorts and removes duplicates.
  static NodeSet from_unsorted(std::vector<NodeId> ids);
  /// Takes ownership of an already sorted, duplicate-free vector. Throws
  /// InvalidInputError otherwise.
  static NodeSet from_sorted(std::vector<NodeId> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(NodeId v) const;

  const_iterator begin() const { return ids_.begin(); }
  const_iterator end() const { return ids_.end(); }
  NodeId operator[](std::size_t i) const { return ids_[i]; }
  std::span<const NodeId> ids() const { return ids_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet& a, const NodeSet& b) {
    return a.ids_ <=> b.ids_;
  }

 private:
  std::vector<NodeId> ids_;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
std::size_t intersection_size(std::span<const NodeId> a,
                              std::span<const NodeId> b);

/// Immutable undirected simple graph on dense ids 0..n-1, stored as sorted
/// adjacency arrays (CSR).
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Edge orientation is irrelevant.
  /// Throws InvalidInputError on self-loops, duplicate edges, or ids >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// All edges with u < v, in ascending lexicographic order.
  std::vector<Edge> edges() const;

  /// Throws InvalidInputError if v is not a node of this graph.
  void check_node(NodeId v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// How a set member's own membership enters fraction and degree counts.
/// Under kSelfInclusive a node is adjacent to itself, so every member of a
/// clique reaches fraction exactly 1.
enum class Counting { kSelfInclusive, kSelfExclusive };

/// count / total, kept exact.
struct Fraction {
  std::size_t count = 0;
  std::size_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
  }
};

// Threshold comparisons of count against frac * total. A small absolute
// slack keeps exact ties (e.g. 2 of 5 against 0.4) on the intended side
// despite floating rounding in frac.
bool at_least(std::size_t count, std::size_t total, double frac);
bool more_than(std::size_t count, std::size_t total, double frac);
bool at_most(std::size_t count, std::size_t total, double frac);
bool less_than(std::size_t count, std::size_t total, double frac);

NodeSet neighborhood(const Graph& g, NodeId v);

/// Union of the neighborhoods of s, joined with s itself.
NodeSet neighborhood_of_set(const Graph& g, const NodeSet& s);

/// |Γ(u) ∩ Γ(v)|; u and v must differ.
std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v);

/// |({v} ∪ Γ(v)) ∩ s| / |s| under kSelfInclusive, |Γ(v) ∩ s| / |s| otherwise.
Fraction adjacency_fraction(const Graph& g, NodeId v, const NodeSet& s,
                            Counting counting = Counting::kSelfInclusive);

/// Worst-case adjacency fractions of a set: the least-attached member and
/// the most-attached outside node.
struct SetProfile {
  Fraction min_member;
  Fraction max_outside;
  NodeId worst_member = 0;
  NodeId worst_outside = 0;
  bool is_clique = false;
};

SetProfile profile_set(const Graph& g, const NodeSet& s,
                       Counting counting = Counting::kSelfInclusive);

/// True iff every member has adjacency fraction >= alpha and every outside
/// node has fraction <= alpha_out. Requires 0 <= alpha_out <= alpha <= 1.
bool is_alpha_epsilon_set(const Graph& g, const NodeSet& s, double alpha,
                          double alpha_out,
                          Counting counting = Counting::kSelfInclusive);

struct InducedSubgraph {
  Graph graph;
  /// to_parent[i] is the parent id of local node i.
  std::vector<NodeId> to_parent;

  NodeSet map_back(const NodeSet& local) const;
};

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& s);

}  // namespace commfind
