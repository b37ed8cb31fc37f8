// Clique procedure for communities of similar size and its gap-relaxed
// variant, which replaces the final certification with density trimming.

#include <chrono>
#include <cmath>
#include <unordered_set>

#include "commfind/detector.hpp"
#include "commfind/errors.hpp"
#include "commfind/formulas.hpp"
#include "commfind/rng.hpp"
#include "detail/bitset.hpp"
#include "detail/local_view.hpp"
#include "detail/trials.hpp"
#include "detail/trim.hpp"

namespace commfind {

namespace {

using detail::BitSet;
using detail::LocalView;
using detail::TrialOutput;

struct CliqueRun {
  const Graph* g;
  const DetectorParams* params;
  Algorithm algorithm;
  double p;
  std::size_t cap;
  bool relaxed;
};

class CliqueTrial {
 public:
  CliqueTrial(const CliqueRun& run, NodeId v, std::size_t index, std::uint64_t seed)
      : run_(run),
        g_(*run.g),
        params_(*run.params),
        v_(v),
        index_(index),
        rng_(seed, index + 1),
        view_(g_, detail::closed_neighborhood(g_, v)),
        counter_(g_.node_count()) {}

  TrialOutput run() {
    TrialOutput out;
    const NodeSet open = neighborhood(g_, v_);
    const NodeSet sample = bernoulli_subsample(open, run_.p, rng_);
    if (static_cast<double>(sample.size()) > 3.0 * static_cast<double>(open.size()) * run_.p) {
      out.stats.trials_skipped = 1;
      return out;
    }
    out.stats.trials_run = 1;
    BitSet sample_bits = view_.empty_set();
    for (NodeId s : sample) sample_bits.set(static_cast<std::size_t>(view_.local(s)));
    BitSet all = view_.empty_set();
    all.set_all();
    if (params_.use_maximal_cliques) {
      BitSet excluded = view_.empty_set();
      bron_kerbosch(sample_bits, excluded);
    } else {
      extend(sample_bits, all);
    }
    out.candidates = std::move(found_);
    return out;
  }

 private:
  // Every clique of G(sample) with at most cap nodes, the empty one
  // included. vprime holds the view nodes adjacent to all of current_.
  void extend(const BitSet& candidates, const BitSet& vprime) {
    detail::charge(used_, params_.enumeration_budget);
    visit(vprime);
    if (current_.size() >= run_.cap) return;
    std::vector<std::size_t> order;
    candidates.for_each([&](std::size_t x) { order.push_back(x); });
    BitSet rest = candidates;
    for (std::size_t x : order) {
      rest.reset(x);
      BitSet next = rest;
      next &= view_.open(x);
      BitSet next_v = vprime;
      next_v &= view_.closed(x);
      current_.push_back(x);
      extend(next, next_v);
      current_.pop_back();
    }
  }

  // Maximal cliques of G(sample), pivoting on the node with the most
  // neighbors among the remaining candidates.
  void bron_kerbosch(BitSet candidates, BitSet excluded) {
    detail::charge(used_, params_.enumeration_budget);
    if (candidates.none() && excluded.none()) {
      if (current_.size() <= run_.cap) {
        BitSet vprime = view_.empty_set();
        vprime.set_all();
        for (std::size_t x : current_) vprime &= view_.closed(x);
        visit(vprime);
      }
      return;
    }
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    auto consider = [&](std::size_t u) {
      const std::size_t c = BitSet::and_count(candidates, view_.open(u));
      if (!have_pivot || c > best) {
        pivot = u;
        best = c;
        have_pivot = true;
      }
    };
    candidates.for_each(consider);
    excluded.for_each(consider);
    std::vector<std::size_t> order;
    candidates.for_each([&](std::size_t x) {
      if (!view_.open(pivot).test(x)) order.push_back(x);
    });
    for (std::size_t x : order) {
      BitSet next_c = candidates;
      next_c &= view_.open(x);
      BitSet next_x = excluded;
      next_x &= view_.open(x);
      current_.push_back(x);
      bron_kerbosch(std::move(next_c), std::move(next_x));
      current_.pop_back();
      candidates.reset(x);
      excluded.set(x);
    }
  }

  void visit(const BitSet& vprime) {
    if (!seen_v_.insert(vprime).second) return;
    const double eps = params_.epsilon;
    const double min_size = params_.delta * static_cast<double>(params_.k);
    const bool inclusive = params_.self_inclusive;
    if (run_.relaxed) {
      auto trimmed = detail::trim_by_density(view_, vprime, 1.0 - eps / 2.0, 1.0 - eps, inclusive);
      const std::size_t size = trimmed.kept.count();
      if (size == 0 || static_cast<double>(size) < (1.0 - eps) * min_size - 1e-9) return;
      emit(view_.to_node_set(trimmed.kept), trimmed.min_density);
      return;
    }
    const std::size_t vsize = vprime.count();
    if (vsize == 0) return;
    BitSet uprime = view_.empty_set();
    vprime.for_each([&](std::size_t x) {
      if (at_least(BitSet::and_count(view_.row(x, inclusive), vprime), vsize, 1.0 - eps / 2.0)) {
        uprime.set(x);
      }
    });
    const std::size_t usize = uprime.count();
    if (usize == 0 || static_cast<double>(usize) < min_size - 1e-9) return;
    if (!seen_u_.insert(uprime).second) return;
    bool clique = true;
    uprime.for_each([&](std::size_t x) {
      if (BitSet::and_count(view_.closed(x), uprime) != usize) clique = false;
    });
    if (!clique) return;
    NodeSet members = view_.to_node_set(uprime);
    if (!at_most(detail::max_outside_count(g_, members, counter_), usize, 1.0 - eps)) return;
    emit(std::move(members), std::nullopt);
  }

  void emit(NodeSet members, std::optional<double> min_density) {
    CandidateSet c;
    c.members = std::move(members);
    c.algorithm = run_.algorithm;
    c.starting_node = v_;
    std::vector<NodeId> seed;
    for (std::size_t x : current_) seed.push_back(view_.global(x));
    c.seed_set = NodeSet::from_unsorted(std::move(seed));
    c.min_density = min_density;
    c.trial_index = index_;
    found_.push_back(std::move(c));
  }

  const CliqueRun& run_;
  const Graph& g_;
  const DetectorParams& params_;
  NodeId v_;
  std::size_t index_;
  RngStream rng_;
  LocalView view_;
  detail::GlobalCounter counter_;
  std::vector<std::size_t> current_;
  std::unordered_set<BitSet, detail::BitSetHash> seen_v_;
  std::unordered_set<BitSet, detail::BitSetHash> seen_u_;
  std::vector<CandidateSet> found_;
  std::uint64_t used_ = 0;
};

DetectionResult run_clique_family(const Graph& g, const DetectorParams& params,
                                  std::uint64_t seed, const RunOptions& options, bool relaxed) {
  const auto start_time = std::chrono::steady_clock::now();
  params.validate();
  if (params.delta * static_cast<double>(params.k) < 2.0 - 1e-9) {
    throw InvalidParamsError("the clique procedure needs delta * k >= 2");
  }
  DetectionResult result;
  result.algorithm = relaxed ? Algorithm::kGapClique : Algorithm::kClique;
  result.seed = seed;
  result.params = params;

  DetectorParams inner = params;
  if (relaxed) {
    inner.epsilon = formulas::gap_clique_epsilon_prime(params);
    result.effective.emplace_back("epsilon_prime", inner.epsilon);
  }
  const double p = params.use_maximal_cliques ? formulas::clique_maximal_sample_prob(inner)
                                              : formulas::clique_sample_prob(inner);
  const std::size_t cap = formulas::size_cap(p, static_cast<double>(params.k));
  const std::size_t n = g.node_count();
  const std::size_t starts = n == 0 ? 0 : formulas::clique_starting_nodes(params, n);
  result.effective.emplace_back("p", p);
  result.effective.emplace_back("size_cap", static_cast<double>(cap));
  result.effective.emplace_back("starting_nodes", static_cast<double>(starts));

  std::vector<NodeId> chosen(starts);
  RngStream master(seed, 0);
  for (auto& v : chosen) v = static_cast<NodeId>(master.below(n));

  const CliqueRun run{&g, &params, result.algorithm, p, cap, relaxed};
  auto outputs = detail::run_indexed<TrialOutput>(
      starts, options.threads,
      [&](std::size_t i) { return CliqueTrial(run, chosen[i], i, seed).run(); });
  std::vector<CandidateSet> pool;
  detail::absorb(result, outputs, pool);
  result.candidates = detail::merge_candidates(std::move(pool));
  result.wall_time_ms = detail::elapsed_ms(start_time);
  return result;
}

}  // namespace

DetectionResult clique_find(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                            const RunOptions& options) {
  return run_clique_family(g, params, seed, options, false);
}

DetectionResult gap_relaxed_clique_find(const Graph& g, const DetectorParams& params,
                                        std::uint64_t seed, const RunOptions& options) {
  return run_clique_family(g, params, seed, options, true);
}

}  // namespace commfind
