#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "commfind/detector.hpp"
#include "commfind/generator.hpp"
#include "commfind/graph.hpp"
#include "commfind/params.hpp"

namespace commfind {

inline constexpr double kDefaultJaccardThreshold = 0.95;

double jaccard(const NodeSet& a, const NodeSet& b);

/// True iff |candidate ∩ truth_c| >= (1 - epsilon)|truth_c| and every
/// member of the candidate is adjacent to at least (1 - epsilon)|candidate|
/// of its members.
bool relaxed_match(const NodeSet& candidate, const NodeSet& truth_c, const Graph& g,
                   double epsilon, Counting counting = Counting::kSelfInclusive);

struct CommunityMatch {
  std::optional<std::size_t> best_candidate;
  double jaccard = 0.0;
  bool exact = false;
  /// Empty when no graph was supplied.
  std::optional<bool> relaxed;
};

struct MatchReport {
  /// One entry per planted community, in truth order.
  std::vector<CommunityMatch> communities;
  std::size_t found_count = 0;
  double jaccard_threshold = kDefaultJaccardThreshold;
  double exact_recovery_rate = 0.0;
  double mean_best_jaccard = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Set when nothing was found; precision is then 1 by convention.
  bool empty_found = false;
};

/// Each planted community is paired with its highest-Jaccard candidate,
/// ties going to the lexicographically smaller candidate. A candidate counts
/// toward precision when it reaches the threshold against some community.
/// Relaxed flags are computed only when g is given.
MatchReport match_communities(const std::vector<NodeSet>& found, const std::vector<NodeSet>& truth,
                              double jaccard_threshold = kDefaultJaccardThreshold,
                              const Graph* g = nullptr, double epsilon = 0.0,
                              Counting counting = Counting::kSelfInclusive);

/// Wilson score interval at 95%.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval wilson_interval(std::size_t successes, std::size_t trials);

/// What recovery_rate runs: an instance (fixed, or regenerated from the
/// trial seed) and a detector configuration.
struct RecoverySpec {
  ModelParams model;
  AmbientSpec ambient;
  /// Fixed instance seed. When empty, trial i regenerates the instance from
  /// base_seed + i and runs the detector with the same seed.
  std::optional<std::uint64_t> instance_seed;
  DetectorParams detector;
  Algorithm algorithm = Algorithm::kClique;
  /// Epsilon of the relaxed-match contract; defaults to detector.epsilon.
  std::optional<double> relaxed_epsilon;
};

struct TrialRow {
  std::uint64_t seed = 0;
  std::size_t candidate_count = 0;
  std::vector<bool> exact;
  std::vector<bool> relaxed;
};

struct CommunityRate {
  std::size_t exact = 0;
  std::size_t relaxed = 0;
  double exact_rate = 0.0;
  double relaxed_rate = 0.0;
  Interval exact_ci;
  Interval relaxed_ci;
};

struct RecoveryTable {
  Algorithm algorithm = Algorithm::kClique;
  std::uint64_t base_seed = 0;
  std::size_t trials = 0;
  std::vector<CommunityRate> communities;
  std::vector<TrialRow> rows;
};

/// Runs the detector with seeds base_seed .. base_seed + trials - 1 and
/// tallies exact and relaxed recovery of each planted community. Trials run
/// concurrently when options.threads > 1; the table does not depend on it.
RecoveryTable recovery_rate(const RecoverySpec& spec, std::size_t trials, std::uint64_t base_seed,
                            const RunOptions& options = {});

/// Same, on an instance supplied by the caller.
RecoveryTable recovery_rate(const Graph& g, const std::vector<NodeSet>& truth,
                            const DetectorParams& detector, Algorithm algorithm,
                            std::size_t trials, std::uint64_t base_seed,
                            std::optional<double> relaxed_epsilon = std::nullopt,
                            const RunOptions& options = {});

}  // namespace commfind
