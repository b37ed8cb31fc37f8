#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "commfind/graph.hpp"
#include "detail/bitset.hpp"

namespace commfind::detail {

/// Bitset adjacency over a small sorted subset of a graph's nodes. Local
/// index i stands for global id nodes[i], so ascending local order is
/// ascending global order.
class LocalView {
 public:
  LocalView(const Graph& g, std::vector<NodeId> nodes)
      : nodes_(std::move(nodes)), position_(g.node_count(), -1) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      position_[nodes_[i]] = static_cast<std::int32_t>(i);
    }
    open_.assign(nodes_.size(), BitSet(nodes_.size()));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (NodeId w : g.neighbors(nodes_[i])) {
        if (position_[w] >= 0) open_[i].set(static_cast<std::size_t>(position_[w]));
      }
    }
    closed_ = open_;
    for (std::size_t i = 0; i < nodes_.size(); ++i) closed_[i].set(i);
  }

  std::size_t size() const { return nodes_.size(); }
  NodeId global(std::size_t i) const { return nodes_[i]; }
  /// -1 when v is outside the view.
  std::int32_t local(NodeId v) const { return position_[v]; }

  const BitSet& open(std::size_t i) const { return open_[i]; }
  const BitSet& closed(std::size_t i) const { return closed_[i]; }
  /// Closed rows under self-inclusive counting, open rows otherwise.
  const BitSet& row(std::size_t i, bool self_inclusive) const {
    return self_inclusive ? closed_[i] : open_[i];
  }

  BitSet empty_set() const { return BitSet(nodes_.size()); }

  NodeSet to_node_set(const BitSet& bits) const {
    std::vector<NodeId> ids;
    bits.for_each([&](std::size_t i) { ids.push_back(nodes_[i]); });
    return NodeSet::from_sorted(std::move(ids));
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::int32_t> position_;
  std::vector<BitSet> open_;
  std::vector<BitSet> closed_;
};

/// Closed neighborhood of v.
inline std::vector<NodeId> closed_neighborhood(const Graph& g, NodeId v) {
  auto nbrs = g.neighbors(v);
  std::vector<NodeId> out(nbrs.begin(), nbrs.end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

/// Nodes within distance two of v, including v.
inline std::vector<NodeId> two_hop_ball(const Graph& g, NodeId v) {
  std::vector<NodeId> out = closed_neighborhood(g, v);
  for (NodeId u : g.neighbors(v)) {
    auto nbrs = g.neighbors(u);
    out.insert(out.end(), nbrs.begin(), nbrs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace commfind::detail
