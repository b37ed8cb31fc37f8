#include "commfind/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "commfind/errors.hpp"
#include "detail/trials.hpp"

namespace commfind {

double jaccard(const NodeSet& a, const NodeSet& b) {
  const std::size_t inter = intersection_size(a.ids(), b.ids());
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

bool relaxed_match(const NodeSet& candidate, const NodeSet& truth_c, const Graph& g,
                   double epsilon, Counting counting) {
  if (candidate.empty()) return false;
  const std::size_t inter = intersection_size(candidate.ids(), truth_c.ids());
  if (!at_least(inter, truth_c.size(), 1.0 - epsilon)) return false;
  for (NodeId v : candidate) {
    const Fraction f = adjacency_fraction(g, v, candidate, counting);
    if (!at_least(f.count, f.total, 1.0 - epsilon)) return false;
  }
  return true;
}

MatchReport match_communities(const std::vector<NodeSet>& found, const std::vector<NodeSet>& truth,
                              double jaccard_threshold, const Graph* g, double epsilon,
                              Counting counting) {
  MatchReport r;
  r.found_count = found.size();
  r.jaccard_threshold = jaccard_threshold;
  r.empty_found = found.empty();
  std::vector<bool> candidate_hit(found.size(), false);
  std::size_t exact = 0;
  std::size_t recalled = 0;
  double jaccard_sum = 0.0;
  for (const NodeSet& t : truth) {
    CommunityMatch m;
    for (std::size_t i = 0; i < found.size(); ++i) {
      const double j = jaccard(found[i], t);
      if (j >= jaccard_threshold) candidate_hit[i] = true;
      if (!m.best_candidate || j > m.jaccard ||
          (j == m.jaccard && found[i] < found[*m.best_candidate])) {
        m.best_candidate = i;
        m.jaccard = j;
      }
    }
    if (m.best_candidate) m.exact = found[*m.best_candidate] == t;
    if (g) {
      m.relaxed = std::any_of(found.begin(), found.end(), [&](const NodeSet& c) {
        return relaxed_match(c, t, *g, epsilon, counting);
      });
    }
    exact += m.exact;
    recalled += m.jaccard >= jaccard_threshold;
    jaccard_sum += m.jaccard;
    r.communities.push_back(m);
  }
  const auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  r.exact_recovery_rate = ratio(exact, truth.size());
  r.mean_best_jaccard = truth.empty() ? 0.0 : jaccard_sum / static_cast<double>(truth.size());
  r.recall = ratio(recalled, truth.size());
  r.precision = found.empty()
                    ? 1.0
                    : ratio(static_cast<std::size_t>(
                                std::count(candidate_hit.begin(), candidate_hit.end(), true)),
                            found.size());
  const double pr = r.precision + r.recall;
  r.f1 = pr == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / pr;
  return r;
}

Interval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

TrialRow score_trial(const Graph& g, const std::vector<NodeSet>& truth,
                     const DetectorParams& detector, Algorithm algorithm, std::uint64_t seed,
                     double relaxed_epsilon) {
  const DetectionResult result = detect(algorithm, g, detector, seed);
  std::vector<NodeSet> found;
  found.reserve(result.candidates.size());
  for (const auto& c : result.candidates) found.push_back(c.members);
  const MatchReport m = match_communities(found, truth, kDefaultJaccardThreshold, &g,
                                          relaxed_epsilon, detector.counting());
  TrialRow row;
  row.seed = seed;
  row.candidate_count = found.size();
  for (const auto& c : m.communities) {
    row.exact.push_back(c.exact);
    row.relaxed.push_back(c.exact || c.relaxed.value_or(false));
  }
  return row;
}

RecoveryTable tabulate(Algorithm algorithm, std::uint64_t base_seed, std::vector<TrialRow> rows) {
  RecoveryTable t;
  t.algorithm = algorithm;
  t.base_seed = base_seed;
  t.trials = rows.size();
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.exact.size());
  t.communities.resize(width);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.exact.size(); ++c) {
      t.communities[c].exact += r.exact[c];
      t.communities[c].relaxed += r.relaxed[c];
    }
  }
  for (auto& c : t.communities) {
    const double n = static_cast<double>(t.trials);
    c.exact_rate = t.trials ? static_cast<double>(c.exact) / n : 0.0;
    c.relaxed_rate = t.trials ? static_cast<double>(c.relaxed) / n : 0.0;
    c.exact_ci = wilson_interval(c.exact, t.trials);
    c.relaxed_ci = wilson_interval(c.relaxed, t.trials);
  }
  t.rows = std::move(rows);
  return t;
}

}  // namespace

RecoveryTable recovery_rate(const RecoverySpec& spec, std::size_t trials, std::uint64_t base_seed,
                            const RunOptions& options) {
  const double eps = spec.relaxed_epsilon.value_or(spec.detector.epsilon);
  if (spec.instance_seed) {
    const GeneratedInstance inst = generate(spec.model, spec.ambient, *spec.instance_seed);
    return recovery_rate(inst.graph, inst.truth.communities, spec.detector, spec.algorithm,
                         trials, base_seed, eps, options);
  }
  auto rows = detail::run_indexed<TrialRow>(trials, options.threads, [&](std::size_t i) {
    const std::uint64_t seed = base_seed + i;
    const GeneratedInstance inst = generate(spec.model, spec.ambient, seed);
    return score_trial(inst.graph, inst.truth.communities, spec.detector, spec.algorithm, seed,
                       eps);
  });
  return tabulate(spec.algorithm, base_seed, std::move(rows));
}

RecoveryTable recovery_rate(const Graph& g, const std::vector<NodeSet>& truth,
                            const DetectorParams& detector, Algorithm algorithm,
                            std::size_t trials, std::uint64_t base_seed,
                            std::optional<double> relaxed_epsilon, const RunOptions& options) {
  const double eps = relaxed_epsilon.value_or(detector.epsilon);
  auto rows = detail::run_indexed<TrialRow>(trials, options.threads, [&](std::size_t i) {
    return score_trial(g, truth, detector, algorithm, base_seed + i, eps);
  });
  return tabulate(algorithm, base_seed, std::move(rows));
}

}  // namespace commfind
