#include "commfind/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "commfind/errors.hpp"

namespace commfind {

namespace {

class BronKerbosch {
 public:
  BronKerbosch(const Graph& g, std::size_t min_size, std::uint64_t budget)
      : g_(g), min_size_(min_size), budget_(budget) {}

  std::vector<NodeSet> run() {
    std::vector<NodeId> p(g_.node_count());
    for (NodeId v = 0; v < p.size(); ++v) p[v] = v;
    expand(std::move(p), {});
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  std::vector<NodeId> filter(const std::vector<NodeId>& s, NodeId v) const {
    std::vector<NodeId> r;
    for (NodeId x : s) {
      if (g_.has_edge(v, x)) r.push_back(x);
    }
    return r;
  }

  void expand(std::vector<NodeId> p, std::vector<NodeId> x) {
    if (++visited_ > budget_) {
      throw BudgetExceededError("maximal clique oracle exceeded its budget of " +
                                std::to_string(budget_) + " recursion nodes");
    }
    if (p.empty() && x.empty()) {
      if (r_.size() >= min_size_ && !r_.empty()) out_.push_back(NodeSet::from_unsorted(r_));
      return;
    }
    if (r_.size() + p.size() < min_size_) return;
    // Pivot: the node of P ∪ X with most neighbors in P.
    NodeId pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* s : {&p, &x}) {
      for (NodeId u : *s) {
        std::size_t c = 0;
        for (NodeId w : p) c += g_.has_edge(u, w);
        if (c > best) best = c, pivot = u;
      }
    }
    std::vector<NodeId> candidates;
    for (NodeId v : p) {
      if (!g_.has_edge(pivot, v)) candidates.push_back(v);
    }
    for (NodeId v : candidates) {
      r_.push_back(v);
      expand(filter(p, v), filter(x, v));
      r_.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  const Graph& g_;
  std::size_t min_size_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  std::vector<NodeId> r_;
  std::vector<NodeSet> out_;
};

}  // namespace

std::vector<NodeSet> enumerate_maximal_cliques(const Graph& g, std::size_t min_size,
                                               std::uint64_t budget) {
  return BronKerbosch(g, min_size, budget).run();
}

std::vector<NodeSet> enumerate_alpha_epsilon_sets(const Graph& g, double alpha, double alpha_out,
                                                  std::size_t min_size, Counting counting,
                                                  std::uint64_t budget) {
  const std::size_t n = g.node_count();
  if (n > 20 || (std::uint64_t{1} << n) > budget) {
    throw BudgetExceededError("alpha-set oracle scans 2^n subsets; n = " + std::to_string(n) +
                              " is over its limit");
  }
  // Adjacency rows as bitmasks, built from the edge list alone.
  std::vector<std::uint32_t> row(n, 0);
  for (const Edge& e : g.edges()) {
    row[e.u] |= std::uint32_t{1} << e.v;
    row[e.v] |= std::uint32_t{1} << e.u;
  }
  if (counting == Counting::kSelfInclusive) {
    for (std::size_t v = 0; v < n; ++v) row[v] |= std::uint32_t{1} << v;
  }
  const double slack = 1e-9;
  std::vector<NodeSet> out;
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  for (std::uint64_t m = 1; m <= full; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < min_size) continue;
    const double s = static_cast<double>(size);
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const double inside = std::popcount(row[v] & mask);
      if (mask >> v & 1u) {
        ok = inside >= alpha * s - slack;
      } else {
        ok = inside <= alpha_out * s + slack;
      }
    }
    if (!ok) continue;
    std::vector<NodeId> ids;
    for (std::size_t v = 0; v < n; ++v) {
      if (mask >> v & 1u) ids.push_back(static_cast<NodeId>(v));
    }
    out.push_back(NodeSet::from_sorted(std::move(ids)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PathCounts::PathCounts(const Graph& g) : n_(g.node_count()) {
  if (n_ > 2000) {
    throw BudgetExceededError("path-count oracle is limited to 2000 nodes");
  }
  std::vector<char> adj(n_ * n_, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u * n_ + e.v] = 1;
    adj[e.v * n_ + e.u] = 1;
  }
  counts_.assign(n_ * n_, 0);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u; v < n_; ++v) {
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < n_; ++w) c += adj[u * n_ + w] & adj[v * n_ + w];
      counts_[u * n_ + v] = counts_[v * n_ + u] = c;
    }
  }
}

PathCounts count_length2_paths_matrix(const Graph& g) { return PathCounts(g); }

}  // namespace commfind
