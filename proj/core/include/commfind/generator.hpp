#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "commfind/graph.hpp"
#include "commfind/params.hpp"
#include "commfind/rng.hpp"

namespace commfind {

struct GroundTruth {
  std::vector<NodeSet> communities;
  /// affinities[c][i] is the affinity of communities[c][i]. Empty when the
  /// truth was loaded without affinities.
  std::vector<std::vector<double>> affinities;
  /// Edges between pairs that share no community, sorted, u < v.
  std::vector<Edge> ambient_edges;
  /// Outside nodes wired into a community by the gap-stress strategy.
  std::vector<NodeId> stress_nodes;

  bool has_affinities() const { return !affinities.empty(); }
  /// Affinity of u in community c; throws if u is not a member.
  double affinity(NodeId u, std::size_t c) const;
  /// For each node, the ascending indices of the communities containing it.
  std::vector<std::vector<std::uint32_t>> memberships(std::size_t n) const;
};

/// Draws community node sets for params.model. Affinities and edges are
/// left empty. Throws GenerationInfeasibleError when the size and overlap
/// constraints cannot be met within params.max_attempts tries.
GroundTruth plant_memberships(const ModelParams& params, RngStream& rng);

/// Fills truth.affinities according to params.model.
void assign_affinities(GroundTruth& truth, const ModelParams& params, RngStream& rng);

/// Samples community edges (pair probability = max over shared communities
/// of p_u * p_v; b / sqrt(k) for the sparse model) and ambient edges, and
/// records the ambient edges and stress nodes in truth.
///
/// Uniform ambient edges are drawn per non-sharing pair with probability q
/// and kept only while both endpoints stay within their ambient budget:
/// floor(community degree * (1 - gamma) / gamma), at most min |C| * d / gamma,
/// zero for nodes in no community, and never enough edges into a community
/// to reach its gap threshold.
Graph realize_graph(GroundTruth& truth, const ModelParams& params, const AmbientSpec& ambient,
                    RngStream& rng);

/// Members' density floor alpha_C of community c: min p_u^2 when
/// affinities are known, otherwise the model's nominal density.
double density_floor(const GroundTruth& truth, const ModelParams& params, std::size_t c);

struct GeneratedInstance {
  Graph graph;
  GroundTruth truth;
  ModelParams params;
  AmbientSpec ambient;
  std::uint64_t seed = 0;
};

/// Deterministic in (params, ambient, seed).
GeneratedInstance generate(const ModelParams& params, const AmbientSpec& ambient,
                           std::uint64_t seed);

}  // namespace commfind
