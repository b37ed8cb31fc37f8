// Procedures for communities of arbitrary size: the exhaustive dense search
// over seed sets and the level-by-level clique search that ignores edges of
// communities found at larger sizes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>

#include "commfind/detector.hpp"
#include "commfind/errors.hpp"
#include "commfind/formulas.hpp"
#include "commfind/rng.hpp"
#include "detail/bitset.hpp"
#include "detail/local_view.hpp"
#include "detail/trials.hpp"

namespace commfind {

namespace {

using detail::BitSet;
using detail::LocalView;
using detail::TrialOutput;

/// C(n, r), saturating at the largest finite double.
double choose(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double c = 1.0;
  for (std::size_t i = 1; i <= r; ++i) {
    c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  }
  return std::round(c);
}

/// Advances pick (strictly increasing indices below limit) to the next
/// combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& pick, std::size_t limit) {
  const std::size_t t = pick.size();
  std::size_t j = t;
  while (j > 0 && pick[j - 1] == limit - t + (j - 1)) --j;
  if (j == 0) return false;
  ++pick[j - 1];
  for (std::size_t q = j; q < t; ++q) pick[q] = pick[q - 1] + 1;
  return true;
}

std::vector<double> density_levels(const DetectorParams& p) {
  std::vector<double> levels;
  const double step = p.epsilon / 4.0;
  for (std::size_t i = 0;; ++i) {
    const double a = 1.0 - static_cast<double>(i) * step;
    if (a < p.alpha_min - 1e-9) break;
    levels.push_back(a);
  }
  if (levels.empty() || levels.back() > p.alpha_min + 1e-9) levels.push_back(p.alpha_min);
  return levels;
}

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

DetectionResult any_size_dense_find(const Graph& g, const DetectorParams& params,
                                    const RunOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  params.validate();
  if (!(params.epsilon < params.alpha_min)) {
    throw InvalidParamsError("the any-size dense procedure needs epsilon < alpha_min");
  }
  DetectionResult result;
  result.algorithm = Algorithm::kAnySizeDense;
  result.params = params;
  const std::size_t n = g.node_count();
  const std::size_t t = formulas::any_size_dense_seed_size(params);
  const std::vector<double> levels = density_levels(params);
  result.effective.emplace_back("T", static_cast<double>(t));
  result.effective.emplace_back("levels", static_cast<double>(levels.size()));
  if (n == 0 || t > n) {
    result.wall_time_ms = detail::elapsed_ms(start_time);
    return result;
  }
  const double work = choose(n, t) * static_cast<double>(levels.size());
  result.effective.emplace_back("seed_set_evaluations", work);
  if (work > static_cast<double>(params.enumeration_budget)) {
    throw BudgetExceededError("C(n, T) * levels = " + std::to_string(work) +
                              " seed-set evaluations exceed enumeration_budget " +
                              std::to_string(params.enumeration_budget) + "; shrink n or T");
  }

  // Work is split by the first member of S; offsets give each S its global
  // lexicographic rank.
  std::vector<std::uint64_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    offset[i + 1] = offset[i] + static_cast<std::uint64_t>(choose(n - 1 - i, t - 1));
  }
  const bool inclusive = params.self_inclusive;
  const double e = params.epsilon;
  auto task = [&](std::size_t first) {
    TrialOutput out;
    if (n - first < t) return out;
    std::vector<std::uint32_t> count(n, 0);
    std::vector<NodeId> touched;
    std::set<std::pair<std::size_t, NodeSet>> seen;
    std::vector<std::size_t> pick(t - 1);
    for (std::size_t j = 0; j + 1 < t; ++j) pick[j] = j;
    const std::size_t rest = n - first - 1;
    std::uint64_t rank = offset[first];
    for (bool more = true; more; more = next_combination(pick, rest), ++rank) {
      std::vector<NodeId> s{static_cast<NodeId>(first)};
      for (std::size_t j : pick) s.push_back(static_cast<NodeId>(first + 1 + j));
      for (NodeId w : touched) count[w] = 0;
      touched.clear();
      auto bump = [&](NodeId w) {
        if (count[w]++ == 0) touched.push_back(w);
      };
      for (NodeId u : s) {
        for (NodeId w : g.neighbors(u)) bump(w);
        if (inclusive) bump(u);
      }
      std::sort(touched.begin(), touched.end());
      out.stats.trials_run += 1;
      for (std::size_t level = 0; level < levels.size(); ++level) {
        const double a = levels[level];
        std::vector<NodeId> ids;
        for (NodeId w : touched) {
          if (more_than(count[w], t, a - e / 4.0)) ids.push_back(w);
        }
        // Sets below the model's minimum community size are never reported.
        if (ids.empty() || ids.size() < params.m) continue;
        NodeSet u = NodeSet::from_sorted(std::move(ids));
        if (!seen.emplace(level, u).second) continue;
        if (!is_alpha_epsilon_set(g, u, a, std::max(0.0, a - e / 2.0), params.counting())) {
          continue;
        }
        CandidateSet c;
        c.members = std::move(u);
        c.algorithm = Algorithm::kAnySizeDense;
        c.seed_set = NodeSet::from_sorted(s);
        c.alpha_used = a;
        c.trial_index = rank * levels.size() + level;
        out.candidates.push_back(std::move(c));
      }
    }
    return out;
  };
  auto outputs = detail::run_indexed<TrialOutput>(n, options.threads, task);
  std::vector<CandidateSet> pool;
  detail::absorb(result, outputs, pool);
  result.candidates = detail::merge_candidates(std::move(pool));
  result.wall_time_ms = detail::elapsed_ms(start_time);
  return result;
}

namespace {

struct AnySizeCliqueRun {
  const Graph* g;
  const DetectorParams* params;
  const std::vector<std::uint64_t>* owned;  // sorted edge keys
  double p;
  std::size_t cap;
  std::size_t t;
};

class AnySizeCliqueStart {
 public:
  AnySizeCliqueStart(const AnySizeCliqueRun& run, NodeId v, std::uint64_t trial_index,
                     std::uint64_t seed)
      : run_(run),
        g_(*run.g),
        params_(*run.params),
        v_(v),
        trial_index_(trial_index),
        seed_(seed),
        view_(g_, detail::two_hop_ball(g_, v)),
        counter_(g_.node_count()) {
    // Rows restricted to edges no emitted community owns.
    unowned_.reserve(view_.size());
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (run_.owned->empty()) {
        unowned_.push_back(view_.open(i));
        continue;
      }
      BitSet row = view_.empty_set();
      const NodeId x = view_.global(i);
      view_.open(i).for_each([&](std::size_t j) {
        const NodeId w = view_.global(j);
        if (!std::binary_search(run_.owned->begin(), run_.owned->end(), edge_key(x, w))) {
          row.set(j);
        }
      });
      unowned_.push_back(std::move(row));
    }
    start_scope_ = view_.closed(static_cast<std::size_t>(view_.local(v)));
  }

  TrialOutput run() {
    const auto nbrs = g_.neighbors(v_);
    const std::size_t t = run_.t;
    if (t > nbrs.size()) {
      out_.stats.trials_skipped += 1;
      return std::move(out_);
    }
    std::vector<std::size_t> pick(t);
    for (std::size_t j = 0; j < t; ++j) pick[j] = j;
    std::uint64_t rank = 0;
    do {
      std::vector<NodeId> s(t);
      BitSet pool = view_.empty_set();
      for (std::size_t j = 0; j < t; ++j) {
        s[j] = nbrs[pick[j]];
        const auto local = static_cast<std::size_t>(view_.local(s[j]));
        pool.set(local);
        pool |= unowned_[local];
      }
      RngStream rng(seed_, derive_stream_index(trial_index_ + 1, rank));
      round(pool, NodeSet::from_sorted(std::move(s)), rng);
      ++rank;
    } while (next_combination(pick, nbrs.size()));
    return std::move(out_);
  }

 private:
  void round(const BitSet& pool, NodeSet seed_set, RngStream& rng) {
    BitSet sample = view_.empty_set();
    pool.for_each([&](std::size_t x) {
      if (rng.bernoulli(run_.p)) sample.set(x);
    });
    if (static_cast<double>(sample.count()) > 3.0 * run_.p * static_cast<double>(pool.count())) {
      out_.stats.trials_skipped += 1;
      return;
    }
    out_.stats.trials_run += 1;
    seed_set_ = std::move(seed_set);
    scope_ = params_.membership_scope == MembershipScope::kRestricted ? &pool : &start_scope_;
    used_ = 0;
    std::size_t depth = 0;
    extend(sample, *scope_, depth);
  }

  void extend(const BitSet& candidates, const BitSet& vprime, std::size_t depth) {
    detail::charge(used_, params_.enumeration_budget);
    visit(vprime);
    if (depth >= run_.cap) return;
    std::vector<std::size_t> order;
    candidates.for_each([&](std::size_t x) { order.push_back(x); });
    BitSet rest = candidates;
    for (std::size_t x : order) {
      rest.reset(x);
      BitSet next = rest;
      next &= view_.open(x);
      BitSet next_v = vprime;
      next_v &= view_.closed(x);
      extend(next, next_v, depth + 1);
    }
  }

  void visit(const BitSet& vprime) {
    const std::size_t vsize = vprime.count();
    if (vsize == 0) return;
    if (!seen_v_.insert(vprime).second) return;
    const double e = params_.epsilon;
    BitSet uprime = view_.empty_set();
    vprime.for_each([&](std::size_t x) {
      if (at_least(BitSet::and_count(view_.row(x, params_.self_inclusive), vprime), vsize,
                   1.0 - e / 4.0)) {
        uprime.set(x);
      }
    });
    const std::size_t usize = uprime.count();
    if (usize == 0) return;
    if (!seen_u_.insert(uprime).second) return;
    bool clique = true;
    uprime.for_each([&](std::size_t x) {
      if (BitSet::and_count(view_.closed(x), uprime) != usize) clique = false;
    });
    if (!clique) return;
    const NodeSet core = view_.to_node_set(uprime);
    NodeSet grown = greedy_maximal_clique(core);
    if (!at_most(detail::max_outside_count(g_, grown, counter_), grown.size(), 1.0 - e)) return;
    if (!emitted_.insert(grown).second) return;
    CandidateSet c;
    c.members = std::move(grown);
    c.algorithm = Algorithm::kAnySizeClique;
    c.starting_node = v_;
    c.seed_set = seed_set_;
    c.trial_index = trial_index_;
    out_.candidates.push_back(std::move(c));
  }

  // Adds, in ascending id order, every node adjacent to all current members.
  NodeSet greedy_maximal_clique(const NodeSet& core) const {
    NodeId anchor = core[0];
    for (NodeId u : core) {
      if (g_.degree(u) < g_.degree(anchor)) anchor = u;
    }
    std::vector<NodeId> members(core.begin(), core.end());
    std::vector<NodeId> added;
    for (NodeId w : g_.neighbors(anchor)) {
      if (core.contains(w)) continue;
      bool ok = true;
      for (NodeId u : core) {
        if (u != anchor && !g_.has_edge(u, w)) {
          ok = false;
          break;
        }
      }
      for (NodeId x : added) {
        if (!ok) break;
        if (!g_.has_edge(x, w)) ok = false;
      }
      if (ok) added.push_back(w);
    }
    members.insert(members.end(), added.begin(), added.end());
    return NodeSet::from_unsorted(std::move(members));
  }

  const AnySizeCliqueRun& run_;
  const Graph& g_;
  const DetectorParams& params_;
  NodeId v_;
  std::uint64_t trial_index_;
  std::uint64_t seed_;
  LocalView view_;
  detail::GlobalCounter counter_;
  std::vector<BitSet> unowned_;
  BitSet start_scope_;
  const BitSet* scope_ = nullptr;
  NodeSet seed_set_;
  std::uint64_t used_ = 0;
  std::unordered_set<BitSet, detail::BitSetHash> seen_v_;
  std::unordered_set<BitSet, detail::BitSetHash> seen_u_;
  std::set<NodeSet> emitted_;
  TrialOutput out_;
};

}  // namespace

DetectionResult any_size_clique_find(const Graph& g, const DetectorParams& params,
                                     std::uint64_t seed, const RunOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  params.validate();
  if (params.m < 1 || params.m > params.k) {
    throw InvalidParamsError("the any-size clique procedure needs 1 <= m <= k");
  }
  DetectionResult result;
  result.algorithm = Algorithm::kAnySizeClique;
  result.seed = seed;
  result.params = params;
  const std::size_t n = g.node_count();
  const std::size_t t = formulas::any_size_clique_seed_size(params);
  result.effective.emplace_back("T", static_cast<double>(t));

  std::vector<std::uint64_t> owned;
  std::vector<CandidateSet> pool;
  RngStream master(seed, 0);
  std::uint64_t trial_offset = 0;
  std::size_t level = 0;
  for (double l = static_cast<double>(params.k); l >= static_cast<double>(params.m) - 1e-9;
       l /= 2.0, ++level) {
    const double p = formulas::any_size_clique_sample_prob(params, t, l);
    const std::size_t cap = formulas::size_cap(p, l);
    const std::size_t starts = n == 0 ? 0 : formulas::any_size_clique_starting_nodes(params, n, l);
    const std::string tag = "level" + std::to_string(level) + "_";
    result.effective.emplace_back(tag + "l", l);
    result.effective.emplace_back(tag + "p", p);
    result.effective.emplace_back(tag + "size_cap", static_cast<double>(cap));
    result.effective.emplace_back(tag + "starting_nodes", static_cast<double>(starts));
    std::vector<NodeId> chosen(starts);
    for (auto& v : chosen) v = static_cast<NodeId>(master.below(n));

    const AnySizeCliqueRun run{&g, &params, &owned, p, cap, t};
    auto outputs = detail::run_indexed<TrialOutput>(
        starts, options.threads, [&](std::size_t i) {
          return AnySizeCliqueStart(run, chosen[i], trial_offset + i, seed).run();
        });
    trial_offset += starts;
    std::vector<CandidateSet> level_found;
    detail::absorb(result, outputs, level_found);
    // Barrier: edges of this level's communities leave Γ⁻ at later levels.
    for (const auto& c : level_found) {
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
          owned.push_back(edge_key(c.members[i], c.members[j]));
        }
      }
      pool.push_back(c);
    }
    std::sort(owned.begin(), owned.end());
    owned.erase(std::unique(owned.begin(), owned.end()), owned.end());
  }
  result.candidates = detail::merge_candidates(std::move(pool));
  result.wall_time_ms = detail::elapsed_ms(start_time);
  return result;
}

}  // namespace commfind
