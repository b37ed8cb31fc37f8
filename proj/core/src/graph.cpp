#include "commfind/graph.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "commfind/errors.hpp"

namespace commfind {

namespace {

constexpr double kThresholdSlack = 1e-9;

}  // namespace

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : ids_(ids) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::from_unsorted(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  NodeSet s;
  s.ids_ = std::move(ids);
  return s;
}

NodeSet NodeSet::from_sorted(std::vector<NodeId> ids) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i - 1] >= ids[i]) {
      throw InvalidInputError("node ids are not strictly ascending");
    }
  }
  NodeSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidInputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") references a node outside 0.." + std::to_string(n) + "-1");
    }
    if (e.u == e.v) {
      throw InvalidInputError("self-loop on node " + std::to_string(e.u));
    }
    ++degree[e.u];
    ++degree[e.v];
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  }
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw InvalidInputError("duplicate edge (" + std::to_string(v) + ", " +
                              std::to_string(*dup) + ")");
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

void Graph::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw InvalidInputError("node id " + std::to_string(v) + " out of range (n = " +
                            std::to_string(node_count()) + ")");
  }
}

bool at_least(std::size_t count, std::size_t total, double frac) {
  return static_cast<double>(count) >= frac * static_cast<double>(total) - kThresholdSlack;
}

bool more_than(std::size_t count, std::size_t total, double frac) {
  return static_cast<double>(count) > frac * static_cast<double>(total) + kThresholdSlack;
}

bool at_most(std::size_t count, std::size_t total, double frac) {
  return !more_than(count, total, frac);
}

bool less_than(std::size_t count, std::size_t total, double frac) {
  return !at_least(count, total, frac);
}

NodeSet neighborhood(const Graph& g, NodeId v) {
  g.check_node(v);
  auto nbrs = g.neighbors(v);
  return NodeSet::from_sorted({nbrs.begin(), nbrs.end()});
}

NodeSet neighborhood_of_set(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw InvalidInputError("neighborhood_of_set requires a nonempty set");
  std::vector<NodeId> ids(s.begin(), s.end());
  for (NodeId u : s) {
    g.check_node(u);
    auto nbrs = g.neighbors(u);
    ids.insert(ids.end(), nbrs.begin(), nbrs.end());
  }
  return NodeSet::from_unsorted(std::move(ids));
}

std::size_t common_neighbor_count(const Graph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw InvalidInputError("common_neighbor_count requires distinct nodes");
  return intersection_size(g.neighbors(u), g.neighbors(v));
}

Fraction adjacency_fraction(const Graph& g, NodeId v, const NodeSet& s, Counting counting) {
  g.check_node(v);
  if (s.empty()) throw InvalidInputError("adjacency_fraction requires a nonempty set");
  std::size_t count = intersection_size(g.neighbors(v), s.ids());
  if (counting == Counting::kSelfInclusive && s.contains(v)) ++count;
  return {count, s.size()};
}

SetProfile profile_set(const Graph& g, const NodeSet& s, Counting counting) {
  SetProfile profile;
  if (s.empty()) return profile;
  const std::size_t self = counting == Counting::kSelfInclusive ? 1 : 0;
  std::vector<std::uint8_t> member(g.node_count(), 0);
  for (NodeId u : s) {
    g.check_node(u);
    member[u] = 1;
  }
  std::vector<std::uint32_t> outside(g.node_count(), 0);
  bool first = true;
  profile.is_clique = true;
  profile.max_outside = {0, s.size()};
  for (NodeId u : s) {
    std::size_t inside = 0;
    for (NodeId w : g.neighbors(u)) {
      if (member[w]) {
        ++inside;
        continue;
      }
      const std::uint32_t c = ++outside[w];
      // Ties go to the smallest id.
      if (c > profile.max_outside.count ||
          (c == profile.max_outside.count && w < profile.worst_outside)) {
        profile.max_outside.count = c;
        profile.worst_outside = w;
      }
    }
    if (inside + 1 != s.size()) profile.is_clique = false;
    Fraction f{inside + self, s.size()};
    if (first || f.count < profile.min_member.count) {
      profile.min_member = f;
      profile.worst_member = u;
      first = false;
    }
  }
  return profile;
}

bool is_alpha_epsilon_set(const Graph& g, const NodeSet& s, double alpha, double alpha_out,
                          Counting counting) {
  if (!(0.0 <= alpha_out && alpha_out <= alpha && alpha <= 1.0)) {
    throw InvalidInputError("is_alpha_epsilon_set requires 0 <= alpha_out <= alpha <= 1");
  }
  if (s.empty()) throw InvalidInputError("is_alpha_epsilon_set requires a nonempty set");
  // Same answer as profile_set, but stops at the first violation; detectors
  // call this on many rejected sets.
  const std::size_t self = counting == Counting::kSelfInclusive ? 1 : 0;
  std::vector<std::uint8_t> member(g.node_count(), 0);
  for (NodeId u : s) {
    g.check_node(u);
    member[u] = 1;
  }
  for (NodeId u : s) {
    std::size_t inside = self;
    for (NodeId w : g.neighbors(u)) inside += member[w];
    if (!at_least(inside, s.size(), alpha)) return false;
  }
  std::vector<std::uint32_t> outside(g.node_count(), 0);
  for (NodeId u : s) {
    for (NodeId w : g.neighbors(u)) {
      if (!member[w] && !at_most(++outside[w], s.size(), alpha_out)) return false;
    }
  }
  return true;
}

NodeSet InducedSubgraph::map_back(const NodeSet& local) const {
  std::vector<NodeId> ids;
  ids.reserve(local.size());
  for (NodeId i : local) ids.push_back(to_parent.at(i));
  return NodeSet::from_sorted(std::move(ids));
}

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& s) {
  InducedSubgraph out;
  out.to_parent.assign(s.begin(), s.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
    const NodeId u = out.to_parent[i];
    g.check_node(u);
    for (NodeId w : g.neighbors(u)) {
      if (w <= u) continue;
      auto it = std::lower_bound(out.to_parent.begin(), out.to_parent.end(), w);
      if (it != out.to_parent.end() && *it == w) {
        edges.push_back({static_cast<NodeId>(i),
                         static_cast<NodeId>(it - out.to_parent.begin())});
      }
    }
  }
  out.graph = Graph::from_edges(out.to_parent.size(), edges);
  return out;
}

}  // namespace commfind
