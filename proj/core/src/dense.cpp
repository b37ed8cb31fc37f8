// Dense procedures for communities of similar size: the single-neighborhood
// version, the robust version that enumerates seed sets S, and the
// gap-relaxed robust version that trims V' by a random density threshold.

#include <chrono>
#include <cmath>
#include <set>
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

enum class DenseMode { kSingle, kRobust, kRelaxed };

struct DenseRun {
  const Graph* g;
  const DetectorParams* params;  // epsilon already replaced by epsilon' when relaxed
  double outer_epsilon;          // epsilon of the relaxed trimming
  Algorithm algorithm;
  DenseMode mode;
  double p;
  std::size_t cap;
  std::size_t t;
};

/// All work for one starting node.
class DenseStart {
 public:
  DenseStart(const DenseRun& run, NodeId v, std::size_t index, std::uint64_t seed)
      : run_(run),
        g_(*run.g),
        params_(*run.params),
        v_(v),
        index_(index),
        seed_(seed),
        view_(g_, run.mode == DenseMode::kSingle ? detail::closed_neighborhood(g_, v)
                                                 : detail::two_hop_ball(g_, v)),
        counter_(g_.node_count()),
        count_(view_.size(), 0) {}

  TrialOutput run() {
    if (run_.mode == DenseMode::kSingle) {
      RngStream rng(seed_, index_ + 1);
      BitSet pool = view_.empty_set();
      pool.set_all();
      round(pool, std::nullopt, rng);
      return std::move(out_);
    }
    // Seed sets: all T-subsets of the open neighborhood, in lexicographic order.
    const auto nbrs = g_.neighbors(v_);
    const std::size_t t = run_.t;
    if (t > nbrs.size()) {
      out_.stats.trials_skipped += 1;
      return std::move(out_);
    }
    std::vector<std::size_t> pick(t);
    for (std::size_t j = 0; j < t; ++j) pick[j] = j;
    for (std::uint64_t rank = 0;; ++rank) {
      std::vector<NodeId> s(t);
      BitSet pool = view_.empty_set();
      for (std::size_t j = 0; j < t; ++j) {
        s[j] = nbrs[pick[j]];
        pool |= view_.closed(static_cast<std::size_t>(view_.local(s[j])));
      }
      RngStream rng(seed_, derive_stream_index(index_ + 1, rank));
      round(pool, NodeSet::from_sorted(std::move(s)), rng);
      // Next combination.
      std::size_t j = t;
      while (j > 0 && pick[j - 1] == nbrs.size() - t + (j - 1)) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t q = j; q < t; ++q) pick[q] = pick[q - 1] + 1;
    }
    return std::move(out_);
  }

 private:
  void round(const BitSet& pool, std::optional<NodeSet> seed_set, RngStream& rng) {
    if (run_.mode == DenseMode::kRelaxed) {
      const double a = params_.alpha;
      const double e = run_.outer_epsilon;
      tau_ = rng.uniform(a - e / 2.0, a - 0.4 * e);
      // Trimming depends on tau, so V' outcomes cannot be reused across rounds.
      seen_v_.clear();
    }
    BitSet sample = view_.empty_set();
    pool.for_each([&](std::size_t x) {
      if (rng.bernoulli(run_.p)) sample.set(x);
    });
    const double expected = run_.p * static_cast<double>(pool.count());
    if (static_cast<double>(sample.count()) > 3.0 * expected) {
      out_.stats.trials_skipped += 1;
      return;
    }
    out_.stats.trials_run += 1;
    pool_ = &pool;
    seed_set_ = std::move(seed_set);
    used_ = 0;
    std::vector<std::size_t> order;
    sample.for_each([&](std::size_t x) { order.push_back(x); });
    extend(order, 0);
  }

  // Nonempty subsets U of the sample with |U| <= cap; count_[x] tracks
  // |row(x) ∩ U| for every view node x.
  void extend(const std::vector<std::size_t>& order, std::size_t from) {
    for (std::size_t j = from; j < order.size(); ++j) {
      if (current_.size() >= run_.cap) return;
      const std::size_t u = order[j];
      const BitSet& row = view_.row(u, params_.self_inclusive);
      row.for_each([&](std::size_t x) { ++count_[x]; });
      current_.push_back(u);
      detail::charge(used_, params_.enumeration_budget);
      visit();
      extend(order, j + 1);
      current_.pop_back();
      row.for_each([&](std::size_t x) { --count_[x]; });
    }
  }

  void visit() {
    const double a = params_.alpha;
    const double e = params_.epsilon;
    const bool inclusive = params_.self_inclusive;
    const double threshold = a - e / 2.0;
    BitSet vprime = view_.empty_set();
    pool_->for_each([&](std::size_t x) {
      if (at_least(count_[x], current_.size(), threshold)) vprime.set(x);
    });
    const std::size_t vsize = vprime.count();
    if (vsize == 0) return;
    if (!seen_v_.insert(vprime).second) return;

    if (run_.mode == DenseMode::kRelaxed) {
      const double outer = run_.outer_epsilon;
      auto trimmed = detail::trim_by_density(view_, vprime, tau_, a - outer, inclusive);
      const std::size_t size = trimmed.kept.count();
      const double min_size = (1.0 - outer) * params_.delta * static_cast<double>(params_.k);
      if (size == 0 || static_cast<double>(size) < min_size - 1e-9) return;
      emit(view_.to_node_set(trimmed.kept), trimmed.min_density);
      return;
    }

    BitSet uprime = view_.empty_set();
    vprime.for_each([&](std::size_t x) {
      if (at_least(BitSet::and_count(view_.row(x, inclusive), vprime), vsize, threshold)) {
        uprime.set(x);
      }
    });
    if (uprime.none()) return;
    if (!seen_u_.insert(uprime).second) return;
    const NodeSet u1 = view_.to_node_set(uprime);
    NodeSet u2 = detail::nodes_attached_more_than(g_, u1, threshold, inclusive, counter_);
    // Communities of the similar-size models have at least delta*k members;
    // smaller sets (isolated nodes under self-inclusive counting, say) are
    // never reported.
    const double min_size = params_.delta * static_cast<double>(params_.k);
    if (u2.empty() || static_cast<double>(u2.size()) < min_size - 1e-9) return;
    if (!seen_u2_.insert(u2).second) return;
    if (!is_alpha_epsilon_set(g_, u2, a - e / 8.0, a - 7.0 * e / 8.0, params_.counting())) {
      return;
    }
    emit(std::move(u2), std::nullopt);
  }

  void emit(NodeSet members, std::optional<double> min_density) {
    if (!emitted_.insert(members).second) return;
    CandidateSet c;
    c.members = std::move(members);
    c.algorithm = run_.algorithm;
    c.starting_node = v_;
    if (seed_set_) {
      c.seed_set = *seed_set_;
    } else {
      std::vector<NodeId> u;
      for (std::size_t x : current_) u.push_back(view_.global(x));
      c.seed_set = NodeSet::from_sorted(std::move(u));
    }
    c.alpha_used = params_.alpha;
    c.min_density = min_density;
    c.trial_index = index_;
    out_.candidates.push_back(std::move(c));
  }

  const DenseRun& run_;
  const Graph& g_;
  const DetectorParams& params_;
  NodeId v_;
  std::size_t index_;
  std::uint64_t seed_;
  LocalView view_;
  detail::GlobalCounter counter_;
  std::vector<std::uint32_t> count_;
  std::vector<std::size_t> current_;
  const BitSet* pool_ = nullptr;
  std::optional<NodeSet> seed_set_;
  double tau_ = 0.0;
  std::uint64_t used_ = 0;
  std::unordered_set<BitSet, detail::BitSetHash> seen_v_;
  std::unordered_set<BitSet, detail::BitSetHash> seen_u_;
  std::set<NodeSet> seen_u2_;
  std::set<NodeSet> emitted_;
  TrialOutput out_;
};

DetectionResult run_dense_family(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                                 const RunOptions& options, DenseMode mode) {
  const auto start_time = std::chrono::steady_clock::now();
  params.validate();
  if (!(params.epsilon < params.alpha)) {
    throw InvalidParamsError("the dense procedures need epsilon < alpha");
  }
  DetectionResult result;
  result.algorithm = mode == DenseMode::kSingle   ? Algorithm::kDense
                     : mode == DenseMode::kRobust ? Algorithm::kRobust
                                                  : Algorithm::kGapDense;
  result.seed = seed;
  result.params = params;

  DetectorParams inner = params;
  if (mode == DenseMode::kRelaxed) {
    inner.epsilon = formulas::gap_dense_epsilon_prime(params);
    result.effective.emplace_back("epsilon_prime", inner.epsilon);
  }
  std::size_t t = 0;
  double p = 0.0;
  if (mode == DenseMode::kSingle) {
    p = formulas::dense_sample_prob(inner);
  } else {
    t = formulas::robust_seed_size(inner);
    p = formulas::robust_sample_prob(inner, t);
    result.effective.emplace_back("T", static_cast<double>(t));
  }
  const std::size_t cap = formulas::size_cap(p, static_cast<double>(params.k));
  const std::size_t n = g.node_count();
  const std::size_t starts = n == 0 ? 0 : formulas::dense_starting_nodes(params, n);
  result.effective.emplace_back("p", p);
  result.effective.emplace_back("size_cap", static_cast<double>(cap));
  result.effective.emplace_back("starting_nodes", static_cast<double>(starts));

  std::vector<NodeId> chosen(starts);
  RngStream master(seed, 0);
  for (auto& v : chosen) v = static_cast<NodeId>(master.below(n));

  const DenseRun run{&g, &inner, params.epsilon, result.algorithm, mode, p, cap, t};
  auto outputs = detail::run_indexed<TrialOutput>(
      starts, options.threads,
      [&](std::size_t i) { return DenseStart(run, chosen[i], i, seed).run(); });
  std::vector<CandidateSet> pool;
  detail::absorb(result, outputs, pool);
  result.candidates = detail::merge_candidates(std::move(pool));
  result.wall_time_ms = detail::elapsed_ms(start_time);
  return result;
}

}  // namespace

DetectionResult dense_find(const Graph& g, const DetectorParams& params, std::uint64_t seed,
                           const RunOptions& options) {
  return run_dense_family(g, params, seed, options, DenseMode::kSingle);
}

DetectionResult robust_dense_find(const Graph& g, const DetectorParams& params,
                                  std::uint64_t seed, const RunOptions& options) {
  return run_dense_family(g, params, seed, options, DenseMode::kRobust);
}

DetectionResult gap_relaxed_dense_find(const Graph& g, const DetectorParams& params,
                                       std::uint64_t seed, const RunOptions& options) {
  return run_dense_family(g, params, seed, options, DenseMode::kRelaxed);
}

}  // namespace commfind
