#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "commfind/graph.hpp"

namespace commfind {

/// Instance families the generator can plant.
enum class ModelKind {
  kCliqueSimilar,    // cliques with sizes in [delta k, k]
  kDenseSimilar,     // G(s, alpha) communities, uniform affinity sqrt(alpha)
  kAffinitySimilar,  // expected-degree communities, affinities in [sqrt(alpha), 1]
  kAnySizeClique,    // cliques with log-uniform sizes in [m, k]
  kAnySizeDense,     // dense communities with log-uniform sizes in [m, k]
  kSparse,           // size-k communities with edge probability B / sqrt(k)
};

/// CLI spelling: clique, dense, affinity, anysize-clique, anysize-dense, sparse.
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

bool is_clique_model(ModelKind kind);
bool is_any_size_model(ModelKind kind);

enum class AmbientStrategy { kNone, kUniform, kGapStress };

std::string_view to_string(AmbientStrategy strategy);
AmbientStrategy parse_ambient_strategy(std::string_view name);

/// How non-community ("ambient") edges are placed.
struct AmbientSpec {
  AmbientStrategy strategy = AmbientStrategy::kNone;
  /// Per-pair edge probability for kUniform, before the per-node caps that
  /// keep the community-edge fraction and the gap intact.
  double q = 0.0;
  /// kGapStress: number of outside nodes wired into the target community.
  std::size_t stress_count = 0;
  /// kGapStress: index of the target community.
  std::size_t stress_target = 0;
};

struct ModelParams {
  ModelKind model = ModelKind::kCliqueSimilar;
  std::size_t n = 0;
  std::size_t community_count = 1;
  std::size_t k = 0;  // max community size
  std::size_t m = 0;  // min community size, any-size models
  std::size_t d = 1;  // max memberships per node
  double delta = 1.0;
  double epsilon = 0.5;
  double gamma = 1.0;
  double alpha = 1.0;
  double alpha_min = 1.0;
  double beta = 0.1;
  double b = 12.0;  // sparse-model constant B
  /// Resampling attempts before plant_memberships gives up.
  std::size_t max_attempts = 100;

  /// Throws InvalidParamsError when the model's invariants do not hold.
  void validate() const;
};

/// Scope of the membership test inside the any-size clique procedure.
enum class MembershipScope {
  kRestricted,  // nodes of the restricted neighborhood of the seed set
  kStartNode,   // nodes of the starting node's closed neighborhood
};

std::string_view to_string(MembershipScope scope);
MembershipScope parse_membership_scope(std::string_view name);

struct DetectorParams {
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t d = 1;
  double delta = 1.0;
  double epsilon = 0.5;
  double gamma = 1.0;
  double alpha = 1.0;
  double alpha_min = 1.0;
  double beta = 0.1;
  double b = 12.0;

  /// Multiplies every sampling probability formula.
  double sample_prob_scale = 1.0;
  /// Multiplies every starting-node count.
  double trial_count_scale = 1.0;
  /// Constant in front of the robust sampling probability.
  double robust_p_constant = 1.0;
  /// Explicit seed-set size for the T-enumerating procedures.
  std::optional<std::size_t> t_override;
  /// Enumerate only maximal cliques of the sample (with the adjusted
  /// sampling probability) instead of all cliques up to the size cap.
  bool use_maximal_cliques = false;
  /// Replaces the derived epsilon' of the gap-relaxed procedures.
  std::optional<double> epsilon_prime;
  MembershipScope membership_scope = MembershipScope::kRestricted;
  /// Per-trial cap on enumerated subsets or cliques, and total cap on
  /// seed sets for the exhaustive any-size dense procedure.
  std::uint64_t enumeration_budget = 100'000'000;
  /// Fraction and degree counting convention.
  bool self_inclusive = true;

  Counting counting() const {
    return self_inclusive ? Counting::kSelfInclusive : Counting::kSelfExclusive;
  }

  /// Copies the shared symbols (k, m, d, delta, ...) from a model.
  static DetectorParams from_model(const ModelParams& model);

  void validate() const;
};

}  // namespace commfind
