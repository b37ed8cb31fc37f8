#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "commfind/generator.hpp"
#include "commfind/graph.hpp"
#include "commfind/params.hpp"

namespace commfind {

/// A node (or node pair) that breaks an assumption, with the measured value.
struct Witness {
  NodeId node = 0;
  std::optional<NodeId> other;
  std::optional<std::size_t> community;
  std::optional<std::size_t> other_community;
  /// Exact count behind `value` when the measurement is a ratio.
  Fraction measured;
  double value = 0.0;
  /// The bound the value was compared against.
  double bound = 0.0;
};

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::vector<Witness> witnesses;
  /// Signed slack of the tightest case; negative on failure.
  double worst_margin = 0.0;
};

struct AssumptionReport {
  std::vector<CheckResult> checks;

  /// True iff every applicable check passed.
  bool all_passed() const;
  const CheckResult& at(const std::string& name) const;
};

/// Every node w outside community C has adjacency fraction below
/// alpha_C - epsilon, where alpha_C is density_floor(truth, params, C).
CheckResult check_gap(const Graph& g, const GroundTruth& truth, const ModelParams& params);

/// Every node with at least one edge has at least a gamma fraction of its
/// edges going to nodes it shares a community with.
CheckResult check_gamma(const Graph& g, const GroundTruth& truth, const ModelParams& params);

/// Every community containing v has size >= (gamma / d) * ambient degree of v.
CheckResult check_gamma_prime(const Graph& g, const GroundTruth& truth,
                              const ModelParams& params);

/// For every member u of C, at least beta |C| members of C lie in no other
/// community containing u.
CheckResult check_distinctness(const Graph& g, const GroundTruth& truth,
                               const ModelParams& params);

/// Membership counts <= d, sizes within the model's band, and (sparse
/// model) pairwise intersections <= k / (20 d^2).
CheckResult check_overlap_and_sizes(const GroundTruth& truth, const ModelParams& params);

/// Realization-level regularity: internal degrees within (1 +- epsilon) of
/// their expectation under the affinities, and for every ordered member
/// pair (u, v), |Γ[u] ∩ Γ[v] ∩ C| >= (1 - epsilon) alpha_C |Γ[v] ∩ C|.
/// Counts use closed neighborhoods.
CheckResult check_regularity_empirical(const Graph& g, const GroundTruth& truth,
                                       const ModelParams& params);

/// Runs every check, marking those the model does not assume as not
/// applicable: the gap for the sparse model, and the 3′ size bound and
/// distinctness outside the any-size clique model.
AssumptionReport validate_instance(const Graph& g, const GroundTruth& truth,
                                   const ModelParams& params);

/// Partial completeness audit for tiny graphs: every (alpha, alpha_out)-set
/// of at least min_size nodes that is not a planted community. Exhaustive,
/// so limited to small n by the oracle's budget.
std::vector<NodeSet> audit_unplanted_sets(const Graph& g, const GroundTruth& truth, double alpha,
                                          double alpha_out, std::size_t min_size);

}  // namespace commfind
