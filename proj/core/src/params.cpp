#include "commfind/params.hpp"

#include <cmath>
#include <string>

#include "commfind/errors.hpp"

namespace commfind {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParamsError(message);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kCliqueSimilar: return "clique";
    case ModelKind::kDenseSimilar: return "dense";
    case ModelKind::kAffinitySimilar: return "affinity";
    case ModelKind::kAnySizeClique: return "anysize-clique";
    case ModelKind::kAnySizeDense: return "anysize-dense";
    case ModelKind::kSparse: return "sparse";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind kind : {ModelKind::kCliqueSimilar, ModelKind::kDenseSimilar,
                         ModelKind::kAffinitySimilar, ModelKind::kAnySizeClique,
                         ModelKind::kAnySizeDense, ModelKind::kSparse}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidParamsError("unknown model '" + std::string(name) + "'");
}

bool is_clique_model(ModelKind kind) {
  return kind == ModelKind::kCliqueSimilar || kind == ModelKind::kAnySizeClique;
}

bool is_any_size_model(ModelKind kind) {
  return kind == ModelKind::kAnySizeClique || kind == ModelKind::kAnySizeDense;
}

std::string_view to_string(AmbientStrategy strategy) {
  switch (strategy) {
    case AmbientStrategy::kNone: return "none";
    case AmbientStrategy::kUniform: return "uniform";
    case AmbientStrategy::kGapStress: return "gap-stress";
  }
  return "?";
}

AmbientStrategy parse_ambient_strategy(std::string_view name) {
  for (AmbientStrategy s :
       {AmbientStrategy::kNone, AmbientStrategy::kUniform, AmbientStrategy::kGapStress}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidParamsError("unknown ambient strategy '" + std::string(name) + "'");
}

std::string_view to_string(MembershipScope scope) {
  return scope == MembershipScope::kRestricted ? "restricted" : "start-node";
}

MembershipScope parse_membership_scope(std::string_view name) {
  if (name == "restricted") return MembershipScope::kRestricted;
  if (name == "start-node") return MembershipScope::kStartNode;
  throw InvalidParamsError("unknown membership scope '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  require(k >= 1, "k must be at least 1");
  require(k <= n, "k must not exceed n");
  require(d >= 1, "d must be at least 1");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(max_attempts >= 1, "max_attempts must be at least 1");
  switch (model) {
    case ModelKind::kCliqueSimilar:
      require(std::ceil(delta * static_cast<double>(k) - 1e-9) >= 1.0,
              "delta * k must be at least 1");
      break;
    case ModelKind::kDenseSimilar:
    case ModelKind::kAffinitySimilar:
      require(std::ceil(delta * static_cast<double>(k) - 1e-9) >= 1.0,
              "delta * k must be at least 1");
      require(alpha <= 1.0 && epsilon < alpha, "need 0 < epsilon < alpha <= 1");
      break;
    case ModelKind::kAnySizeClique:
      require(m >= 1 && m <= k, "need 1 <= m <= k");
      break;
    case ModelKind::kAnySizeDense:
      require(m >= 1 && m <= k, "need 1 <= m <= k");
      require(alpha_min <= 1.0 && epsilon < alpha_min, "need 0 < epsilon < alpha_min <= 1");
      break;
    case ModelKind::kSparse:
      require(b > 10.0, "the sparse model needs b > 10");
      require(b * b <= static_cast<double>(k),
              "the sparse model needs b / sqrt(k) <= 1, i.e. k >= b^2");
      break;
  }
}

DetectorParams DetectorParams::from_model(const ModelParams& model) {
  DetectorParams p;
  p.k = model.k;
  p.m = model.m;
  p.d = model.d;
  p.delta = model.delta;
  p.epsilon = model.epsilon;
  p.gamma = model.gamma;
  p.alpha = model.alpha;
  p.alpha_min = model.alpha_min;
  p.beta = model.beta;
  p.b = model.b;
  return p;
}

void DetectorParams::validate() const {
  require(d >= 1, "d must be at least 1");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  require(alpha_min > 0.0 && alpha_min <= 1.0, "alpha_min must lie in (0, 1]");
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(positive_finite(sample_prob_scale), "sample_prob_scale must be positive");
  require(positive_finite(trial_count_scale), "trial_count_scale must be positive");
  require(positive_finite(robust_p_constant), "robust_p_constant must be positive");
  require(!t_override || *t_override >= 1, "t_override must be at least 1");
  require(!epsilon_prime || (*epsilon_prime > 0.0 && *epsilon_prime < 1.0),
          "epsilon_prime must lie in (0, 1)");
  require(enumeration_budget >= 1, "enumeration_budget must be at least 1");
}

}  // namespace commfind
