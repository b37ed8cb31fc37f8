#include "commfind/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "commfind/errors.hpp"

namespace commfind {

namespace {

std::size_t min_size(const ModelParams& p) {
  switch (p.model) {
    case ModelKind::kAnySizeClique:
    case ModelKind::kAnySizeDense:
      return p.m;
    case ModelKind::kSparse:
      return p.k;
    default:
      return static_cast<std::size_t>(std::ceil(p.delta * static_cast<double>(p.k) - 1e-9));
  }
}

std::size_t draw_size(const ModelParams& p, RngStream& rng) {
  const std::size_t lo = min_size(p);
  if (p.model == ModelKind::kSparse || lo >= p.k) return p.k;
  if (is_any_size_model(p.model)) {
    // Log-uniform over the integers m..k.
    const double x = std::exp(rng.uniform(std::log(static_cast<double>(lo)),
                                          std::log(static_cast<double>(p.k) + 1.0)));
    return std::clamp(static_cast<std::size_t>(x), lo, p.k);
  }
  return lo + static_cast<std::size_t>(rng.below(p.k - lo + 1));
}

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool share_community(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace

double GroundTruth::affinity(NodeId u, std::size_t c) const {
  const NodeSet& members = communities.at(c);
  auto it = std::lower_bound(members.begin(), members.end(), u);
  if (it == members.end() || *it != u) {
    throw InvalidInputError("node " + std::to_string(u) + " is not in community " +
                            std::to_string(c));
  }
  if (!has_affinities()) return 1.0;
  return affinities.at(c).at(static_cast<std::size_t>(it - members.begin()));
}

std::vector<std::vector<std::uint32_t>> GroundTruth::memberships(std::size_t n) const {
  std::vector<std::vector<std::uint32_t>> out(n);
  for (std::size_t c = 0; c < communities.size(); ++c) {
    for (NodeId u : communities[c]) {
      if (u >= n) {
        throw InvalidInputError("community " + std::to_string(c) + " references node " +
                                std::to_string(u) + " outside 0.." + std::to_string(n) + "-1");
      }
      out[u].push_back(static_cast<std::uint32_t>(c));
    }
  }
  return out;
}

GroundTruth plant_memberships(const ModelParams& params, RngStream& rng) {
  params.validate();
  const std::size_t n = params.n;
  const std::size_t lo = min_size(params);
  if (params.community_count * lo > n * params.d) {
    throw GenerationInfeasibleError(
        std::to_string(params.community_count) + " communities of at least " +
        std::to_string(lo) + " nodes need more than n * d = " + std::to_string(n * params.d) +
        " memberships");
  }
  const bool sparse = params.model == ModelKind::kSparse;
  const std::size_t intersection_cap =
      params.k / (20 * params.d * params.d);

  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    std::vector<std::size_t> count(n, 0);
    std::vector<std::vector<std::uint32_t>> member_of(n);
    std::vector<NodeSet> communities;
    bool ok = true;
    for (std::size_t c = 0; c < params.community_count && ok; ++c) {
      const std::size_t size = draw_size(params, rng);
      std::vector<NodeId> eligible;
      for (NodeId u = 0; u < n; ++u) {
        if (count[u] < params.d) eligible.push_back(u);
      }
      if (eligible.size() < size) {
        ok = false;
        break;
      }
      shuffle(eligible, rng);
      std::vector<NodeId> chosen;
      std::vector<std::size_t> shared(c, 0);
      for (NodeId u : eligible) {
        if (chosen.size() == size) break;
        if (sparse) {
          const bool fits = std::all_of(member_of[u].begin(), member_of[u].end(),
                                        [&](std::uint32_t o) { return shared[o] < intersection_cap; });
          if (!fits) continue;
          for (std::uint32_t o : member_of[u]) ++shared[o];
        }
        chosen.push_back(u);
      }
      if (chosen.size() < size) {
        ok = false;
        break;
      }
      for (NodeId u : chosen) {
        ++count[u];
        member_of[u].push_back(static_cast<std::uint32_t>(c));
      }
      communities.push_back(NodeSet::from_unsorted(std::move(chosen)));
    }
    if (ok) {
      GroundTruth truth;
      truth.communities = std::move(communities);
      return truth;
    }
  }
  throw GenerationInfeasibleError("could not place " + std::to_string(params.community_count) +
                                  " communities within " +
                                  std::to_string(params.max_attempts) + " attempts");
}

void assign_affinities(GroundTruth& truth, const ModelParams& params, RngStream& rng) {
  truth.affinities.clear();
  for (const NodeSet& c : truth.communities) {
    std::vector<double> a(c.size(), 1.0);
    switch (params.model) {
      case ModelKind::kCliqueSimilar:
      case ModelKind::kAnySizeClique:
        break;
      case ModelKind::kDenseSimilar:
        std::fill(a.begin(), a.end(), std::sqrt(params.alpha));
        break;
      case ModelKind::kAffinitySimilar:
        for (double& x : a) x = rng.uniform(std::sqrt(params.alpha), 1.0);
        break;
      case ModelKind::kAnySizeDense: {
        const double alpha_c = rng.uniform(params.alpha_min, 1.0);
        std::fill(a.begin(), a.end(), std::sqrt(alpha_c));
        break;
      }
      case ModelKind::kSparse:
        std::fill(a.begin(), a.end(),
                  std::sqrt(params.b / std::sqrt(static_cast<double>(params.k))));
        break;
    }
    truth.affinities.push_back(std::move(a));
  }
}

double density_floor(const GroundTruth& truth, const ModelParams& params, std::size_t c) {
  if (truth.has_affinities()) {
    const auto& a = truth.affinities.at(c);
    double lo = 1.0;
    for (double x : a) lo = std::min(lo, x * x);
    return lo;
  }
  switch (params.model) {
    case ModelKind::kCliqueSimilar:
    case ModelKind::kAnySizeClique:
      return 1.0;
    case ModelKind::kDenseSimilar:
    case ModelKind::kAffinitySimilar:
      return params.alpha;
    case ModelKind::kAnySizeDense:
      return params.alpha_min;
    case ModelKind::kSparse:
      return params.b / std::sqrt(static_cast<double>(params.k));
  }
  return 1.0;
}

Graph realize_graph(GroundTruth& truth, const ModelParams& params, const AmbientSpec& ambient,
                    RngStream& rng) {
  const std::size_t n = params.n;
  const bool sparse = params.model == ModelKind::kSparse;
  if (sparse && ambient.strategy != AmbientStrategy::kNone) {
    throw InvalidParamsError("the sparse model has no ambient edges");
  }
  if (!truth.has_affinities() && !sparse) {
    throw InvalidInputError("realize_graph needs affinities");
  }
  if (ambient.strategy == AmbientStrategy::kUniform && !(ambient.q >= 0.0 && ambient.q <= 1.0)) {
    throw InvalidParamsError("ambient q must lie in [0, 1]");
  }
  const auto member_of = truth.memberships(n);
  const std::size_t count = truth.communities.size();

  // Community pairs with the max probability over shared communities.
  std::vector<std::pair<std::uint64_t, double>> pairs;
  const double sparse_p = params.b / std::sqrt(static_cast<double>(params.k));
  for (std::size_t c = 0; c < count; ++c) {
    const NodeSet& members = truth.communities[c];
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const double p = sparse ? sparse_p : truth.affinities[c][i] * truth.affinities[c][j];
        pairs.emplace_back(pair_key(members[i], members[j]), p);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    double p = 0.0;
    for (; j < pairs.size() && pairs[j].first == pairs[i].first; ++j) p = std::max(p, pairs[j].second);
    if (rng.bernoulli(p)) {
      edges.push_back({static_cast<NodeId>(pairs[i].first >> 32),
                       static_cast<NodeId>(pairs[i].first & 0xffffffffULL)});
    }
    i = j;
  }
  pairs.clear();
  pairs.shrink_to_fit();

  truth.ambient_edges.clear();
  truth.stress_nodes.clear();
  std::vector<double> floors(count);
  for (std::size_t c = 0; c < count; ++c) floors[c] = density_floor(truth, params, c);

  if (ambient.strategy == AmbientStrategy::kUniform) {
    // adjacency[u * count + c]: edges from u into community c, kept for
    // nodes outside c so additions can be checked against the gap.
    std::vector<std::uint32_t> adjacency(n * count, 0);
    std::vector<std::size_t> community_degree(n, 0);
    for (const Edge& e : edges) {
      ++community_degree[e.u];
      ++community_degree[e.v];
      for (std::uint32_t c : member_of[e.v]) ++adjacency[e.u * count + c];
      for (std::uint32_t c : member_of[e.u]) ++adjacency[e.v * count + c];
    }
    std::vector<std::size_t> budget(n, 0);
    for (NodeId u = 0; u < n; ++u) {
      if (member_of[u].empty()) continue;
      double cap = static_cast<double>(community_degree[u]) * (1.0 - params.gamma) / params.gamma;
      std::size_t smallest = std::numeric_limits<std::size_t>::max();
      for (std::uint32_t c : member_of[u]) smallest = std::min(smallest, truth.communities[c].size());
      cap = std::min(cap, static_cast<double>(smallest) * static_cast<double>(params.d) /
                              params.gamma);
      budget[u] = static_cast<std::size_t>(std::floor(cap + 1e-9));
    }
    std::vector<std::size_t> ambient_degree(n, 0);
    auto gap_room = [&](NodeId outsider, NodeId member) {
      for (std::uint32_t c : member_of[member]) {
        const double size = static_cast<double>(truth.communities[c].size());
        const double next = static_cast<double>(adjacency[outsider * count + c] + 1);
        if (next >= (floors[c] - params.epsilon) * size - 1e-9) return false;
      }
      return true;
    };
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (share_community(member_of[u], member_of[v])) continue;
        if (!(rng.uniform() < ambient.q)) continue;
        if (ambient_degree[u] >= budget[u] || ambient_degree[v] >= budget[v]) continue;
        if (!gap_room(u, v) || !gap_room(v, u)) continue;
        ++ambient_degree[u];
        ++ambient_degree[v];
        for (std::uint32_t c : member_of[v]) ++adjacency[u * count + c];
        for (std::uint32_t c : member_of[u]) ++adjacency[v * count + c];
        truth.ambient_edges.push_back({u, v});
      }
    }
  } else if (ambient.strategy == AmbientStrategy::kGapStress) {
    if (ambient.stress_target >= count) {
      throw InvalidParamsError("stress_target " + std::to_string(ambient.stress_target) +
                               " is not a community index");
    }
    std::vector<NodeId> free_nodes;
    for (NodeId u = 0; u < n; ++u) {
      if (member_of[u].empty()) free_nodes.push_back(u);
    }
    if (free_nodes.size() < ambient.stress_count) {
      throw GenerationInfeasibleError("only " + std::to_string(free_nodes.size()) +
                                      " nodes lie outside every community; " +
                                      std::to_string(ambient.stress_count) +
                                      " stress nodes requested");
    }
    shuffle(free_nodes, rng);
    free_nodes.resize(ambient.stress_count);
    std::sort(free_nodes.begin(), free_nodes.end());
    const NodeSet& target = truth.communities[ambient.stress_target];
    const double floor_c = floors[ambient.stress_target];
    const auto wires = static_cast<std::size_t>(std::floor(
        (floor_c - params.epsilon / 2.0) * static_cast<double>(target.size()) + 1e-9));
    for (NodeId s : free_nodes) {
      std::vector<NodeId> members(target.begin(), target.end());
      shuffle(members, rng);
      members.resize(std::min(wires, members.size()));
      for (NodeId w : members) truth.ambient_edges.push_back({std::min(s, w), std::max(s, w)});
    }
    truth.stress_nodes = std::move(free_nodes);
  }
  std::sort(truth.ambient_edges.begin(), truth.ambient_edges.end());
  edges.insert(edges.end(), truth.ambient_edges.begin(), truth.ambient_edges.end());
  return Graph::from_edges(n, edges);
}

GeneratedInstance generate(const ModelParams& params, const AmbientSpec& ambient,
                           std::uint64_t seed) {
  GeneratedInstance out;
  out.params = params;
  out.ambient = ambient;
  out.seed = seed;
  RngStream membership_rng(seed, 0);
  RngStream affinity_rng(seed, 1);
  RngStream edge_rng(seed, 2);
  out.truth = plant_memberships(params, membership_rng);
  assign_affinities(out.truth, params, affinity_rng);
  out.graph = realize_graph(out.truth, params, ambient, edge_rng);
  return out;
}

}  // namespace commfind
