#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commfind/graph.hpp"
#include "commfind/params.hpp"

namespace commfind {

enum class Algorithm {
  kClique,
  kDense,
  kRobust,
  kAnySizeDense,
  kAnySizeClique,
  kGapClique,
  kGapDense,
  kSparse,
};

/// CLI spelling: clique, dense, robust, anysize-dense, anysize-clique,
/// gap-clique, gap-dense, sparse.
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

struct CandidateSet {
  NodeSet members;
  Algorithm algorithm = Algorithm::kClique;
  std::optional<NodeId> starting_node;
  std::optional<NodeSet> seed_set;
  /// Density level the candidate was certified at (dense procedures).
  std::optional<double> alpha_used;
  /// Least internal density after trimming (gap-relaxed procedures).
  std::optional<double> min_density;
  std::uint64_t trial_index = 0;
};

struct TrialStats {
  /// Rounds (a starting node, or a starting node with one seed set) that
  /// reached the enumeration step.
  std::uint64_t trials_run = 0;
  /// Rounds dropped by the sample-size guard or for lack of seed sets.
  std::uint64_t trials_skipped = 0;
};

struct DetectionResult {
  Algorithm algorithm = Algorithm::kClique;
  std::uint64_t seed = 0;
  DetectorParams params;
  /// Sorted by member set; member sets are pairwise distinct.
  std::vector<CandidateSet> candidates;
  TrialStats stats;
  double wall_time_ms = 0.0;
  /// Effective derived values (p, starting-node count, caps, T, ...).
  std::vector<std::pair<std::string, double>> effective;
};

struct RunOptions {
  /// Worker threads for independent trials. Never changes the result.
  std::size_t threads = 1;
};

DetectionResult clique_find(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                            const RunOptions& options = {});
DetectionResult dense_find(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                           const RunOptions& options = {});
DetectionResult robust_dense_find(const Graph& g, const DetectorParams& params,
                                  std::uint64_t seed, const RunOptions& options = {});
/// Deterministic; takes no seed.
DetectionResult any_size_dense_find(const Graph& g, const DetectorParams& params,
                                    const RunOptions& options = {});
DetectionResult any_size_clique_find(const Graph& g, const DetectorParams& params,
                                     std::uint64_t seed, const RunOptions& options = {});
DetectionResult gap_relaxed_clique_find(const Graph& g, const DetectorParams& params,
                                        std::uint64_t seed, const RunOptions& options = {});
DetectionResult gap_relaxed_dense_find(const Graph& g, const DetectorParams& params,
                                       std::uint64_t seed, const RunOptions& options = {});

/// Graph on the same nodes with an edge (u, v) iff u and v have at least
/// ceil(b^2 / 2) common neighbors in g.
Graph square_transform(const Graph& g, double b, const RunOptions& options = {});

/// Parameters the sparse pipeline hands to the robust procedure on the
/// transformed graph: alpha 0.9, delta 1, epsilon 0.6, gamma 1/(3d).
DetectorParams sparse_inner_params(const DetectorParams& params);

/// square_transform followed by robust_dense_find with sparse_inner_params.
DetectionResult sparse_pipeline(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                                const RunOptions& options = {});

/// Dispatches on algorithm; the seed is ignored by kAnySizeDense.
DetectionResult detect(Algorithm algorithm, const Graph& g, const DetectorParams& params,
                       std::uint64_t seed, const RunOptions& options = {});

struct Certificate {
  bool is_clique = false;
  Fraction min_member;
  Fraction max_outside;
  /// (alpha - eps/8, alpha - 7 eps/8) verdict at the candidate's alpha.
  bool dense_verdict = false;
  /// Whether the candidate meets the final check of the algorithm that
  /// emitted it.
  bool passes = false;
};

/// Recomputes the emitting algorithm's final check from scratch. Sparse
/// candidates are checked on the transformed graph.
Certificate certify_candidate(const Graph& g, const CandidateSet& c,
                              const DetectorParams& params);

}  // namespace commfind
