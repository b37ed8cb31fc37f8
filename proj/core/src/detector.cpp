#include "commfind/detector.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "commfind/errors.hpp"
#include "commfind/formulas.hpp"
#include "detail/trials.hpp"

namespace commfind {

namespace {

constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kClique,        Algorithm::kDense,     Algorithm::kRobust,
    Algorithm::kAnySizeDense,  Algorithm::kAnySizeClique, Algorithm::kGapClique,
    Algorithm::kGapDense,      Algorithm::kSparse,
};

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kClique: return "clique";
    case Algorithm::kDense: return "dense";
    case Algorithm::kRobust: return "robust";
    case Algorithm::kAnySizeDense: return "anysize-dense";
    case Algorithm::kAnySizeClique: return "anysize-clique";
    case Algorithm::kGapClique: return "gap-clique";
    case Algorithm::kGapDense: return "gap-dense";
    case Algorithm::kSparse: return "sparse";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  throw InvalidParamsError("unknown algorithm '" + std::string(name) + "'");
}

Graph square_transform(const Graph& g, double b, const RunOptions& options) {
  const std::size_t threshold = formulas::square_threshold(b);
  const std::size_t n = g.node_count();
  // Row u holds the partners v > u with enough length-2 paths.
  auto rows = detail::run_indexed<std::vector<NodeId>>(
      n, options.threads, [&](std::size_t u) {
        std::vector<std::uint32_t> paths(n, 0);
        std::vector<NodeId> touched;
        for (NodeId w : g.neighbors(static_cast<NodeId>(u))) {
          for (NodeId x : g.neighbors(w)) {
            if (x <= u) continue;
            if (paths[x]++ == 0) touched.push_back(x);
          }
        }
        std::vector<NodeId> keep;
        for (NodeId x : touched) {
          if (paths[x] >= threshold) keep.push_back(x);
        }
        std::sort(keep.begin(), keep.end());
        return keep;
      });
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (NodeId v : rows[u]) edges.push_back({static_cast<NodeId>(u), v});
  }
  return Graph::from_edges(n, edges);
}

DetectorParams sparse_inner_params(const DetectorParams& params) {
  DetectorParams inner = params;
  inner.alpha = 0.9;
  inner.delta = 1.0;
  inner.epsilon = 0.6;
  inner.gamma = 1.0 / (3.0 * static_cast<double>(params.d));
  return inner;
}

DetectionResult sparse_pipeline(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                                const RunOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  params.validate();
  const Graph transformed = square_transform(g, params.b, options);
  DetectionResult result = robust_dense_find(transformed, sparse_inner_params(params), seed, options);
  result.algorithm = Algorithm::kSparse;
  result.params = params;
  for (auto& c : result.candidates) c.algorithm = Algorithm::kSparse;
  result.effective.insert(result.effective.begin(),
                          {"square_threshold",
                           static_cast<double>(formulas::square_threshold(params.b))});
  result.effective.insert(result.effective.begin() + 1,
                          {"transformed_edges", static_cast<double>(transformed.edge_count())});
  result.wall_time_ms = detail::elapsed_ms(start_time);
  return result;
}

DetectionResult detect(Algorithm algorithm, const Graph& g, const DetectorParams& params,
                       std::uint64_t seed, const RunOptions& options) {
  switch (algorithm) {
    case Algorithm::kClique: return clique_find(g, params, seed, options);
    case Algorithm::kDense: return dense_find(g, params, seed, options);
    case Algorithm::kRobust: return robust_dense_find(g, params, seed, options);
    case Algorithm::kAnySizeDense: {
      DetectionResult r = any_size_dense_find(g, params, options);
      r.seed = seed;
      return r;
    }
    case Algorithm::kAnySizeClique: return any_size_clique_find(g, params, seed, options);
    case Algorithm::kGapClique: return gap_relaxed_clique_find(g, params, seed, options);
    case Algorithm::kGapDense: return gap_relaxed_dense_find(g, params, seed, options);
    case Algorithm::kSparse: return sparse_pipeline(g, params, seed, options);
  }
  throw InvalidParamsError("unknown algorithm");
}

Certificate certify_candidate(const Graph& g, const CandidateSet& c, const DetectorParams& params) {
  if (c.members.empty()) throw InvalidInputError("cannot certify an empty candidate");
  Graph transformed;
  const Graph* host = &g;
  DetectorParams p = params;
  if (c.algorithm == Algorithm::kSparse) {
    transformed = square_transform(g, params.b);
    host = &transformed;
    p = sparse_inner_params(params);
  }
  const SetProfile profile = profile_set(*host, c.members, p.counting());
  Certificate cert;
  cert.is_clique = profile.is_clique;
  cert.min_member = profile.min_member;
  cert.max_outside = profile.max_outside;
  const std::size_t size = c.members.size();
  const double a = c.alpha_used.value_or(p.alpha);
  const double e = p.epsilon;
  cert.dense_verdict = at_least(profile.min_member.count, size, a - e / 8.0) &&
                       at_most(profile.max_outside.count, size, a - 7.0 * e / 8.0);
  switch (c.algorithm) {
    case Algorithm::kClique:
      cert.passes = profile.is_clique && at_most(profile.max_outside.count, size, 1.0 - e) &&
                    static_cast<double>(size) >= p.delta * static_cast<double>(p.k) - 1e-9;
      break;
    case Algorithm::kAnySizeClique:
      cert.passes = profile.is_clique && at_most(profile.max_outside.count, size, 1.0 - e);
      break;
    case Algorithm::kDense:
    case Algorithm::kRobust:
    case Algorithm::kSparse:
      cert.passes = cert.dense_verdict;
      break;
    case Algorithm::kAnySizeDense:
      cert.passes = at_least(profile.min_member.count, size, a) &&
                    at_most(profile.max_outside.count, size, std::max(0.0, a - e / 2.0));
      break;
    case Algorithm::kGapClique:
      cert.passes = at_least(profile.min_member.count, size, 1.0 - e);
      break;
    case Algorithm::kGapDense:
      cert.passes = at_least(profile.min_member.count, size, a - e);
      break;
  }
  return cert;
}

}  // namespace commfind
