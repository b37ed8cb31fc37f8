#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "commfind/detector.hpp"
#include "commfind/errors.hpp"
#include "commfind/graph.hpp"

namespace commfind::detail {

/// Output of one independent unit of work (usually one starting node).
struct TrialOutput {
  std::vector<CandidateSet> candidates;
  TrialStats stats;
};

/// Runs work(i) for i in [0, count) on up to `threads` workers and returns
/// the outputs indexed by i. If any call throws, the exception of the
/// lowest failing index is rethrown after all workers stop.
template <class R>
std::vector<R> run_indexed(std::size_t count, std::size_t threads,
                           const std::function<R(std::size_t)>& work) {
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = work(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(threads, count));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Deduplicates by exact member set, keeping the lowest trial index, and
/// sorts by member set.
inline std::vector<CandidateSet> merge_candidates(std::vector<CandidateSet> all) {
  std::sort(all.begin(), all.end(), [](const CandidateSet& a, const CandidateSet& b) {
    if (a.members != b.members) return a.members < b.members;
    return a.trial_index < b.trial_index;
  });
  std::vector<CandidateSet> out;
  for (auto& c : all) {
    if (!out.empty() && out.back().members == c.members) continue;
    out.push_back(std::move(c));
  }
  return out;
}

inline void absorb(DetectionResult& result, std::vector<TrialOutput>& outputs,
                   std::vector<CandidateSet>& pool) {
  for (auto& o : outputs) {
    result.stats.trials_run += o.stats.trials_run;
    result.stats.trials_skipped += o.stats.trials_skipped;
    for (auto& c : o.candidates) pool.push_back(std::move(c));
  }
}

/// Per-node counters over the whole graph, reset after each use.
class GlobalCounter {
 public:
  explicit GlobalCounter(std::size_t n) : count_(n, 0) {}

  /// Adjacency counts of every node into s, with each member of s also
  /// counting itself when self_inclusive. Returns the touched nodes in no
  /// particular order.
  const std::vector<NodeId>& count_into(const Graph& g, const NodeSet& s,
                                        bool self_inclusive = false) {
    reset();
    for (NodeId u : s) {
      if (self_inclusive && count_[u]++ == 0) touched_.push_back(u);
      for (NodeId w : g.neighbors(u)) {
        if (count_[w]++ == 0) touched_.push_back(w);
      }
    }
    return touched_;
  }
  std::uint32_t operator[](NodeId v) const { return count_[v]; }

  void reset() {
    for (NodeId w : touched_) count_[w] = 0;
    touched_.clear();
  }

 private:
  std::vector<std::uint32_t> count_;
  std::vector<NodeId> touched_;
};

/// Nodes with more than frac of s as (self-inclusive when requested)
/// neighbors.
inline NodeSet nodes_attached_more_than(const Graph& g, const NodeSet& s, double frac,
                                        bool self_inclusive, GlobalCounter& counter) {
  auto& touched = counter.count_into(g, s, self_inclusive);
  std::vector<NodeId> ids;
  for (NodeId w : touched) {
    if (more_than(counter[w], s.size(), frac)) ids.push_back(w);
  }
  counter.reset();
  std::sort(ids.begin(), ids.end());
  return NodeSet::from_sorted(std::move(ids));
}

/// Largest adjacency count of a node outside s into s.
inline std::size_t max_outside_count(const Graph& g, const NodeSet& s, GlobalCounter& counter) {
  const auto& touched = counter.count_into(g, s);
  std::size_t best = 0;
  for (NodeId w : touched) {
    if (!s.contains(w)) best = std::max<std::size_t>(best, counter[w]);
  }
  counter.reset();
  return best;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

/// Thrown from deep inside an enumeration when a trial's budget runs out.
inline void charge(std::uint64_t& used, std::uint64_t budget) {
  if (++used > budget) {
    throw BudgetExceededError("enumeration budget of " + std::to_string(budget) +
                              " exceeded in one trial; raise enumeration_budget or lower "
                              "sample_prob_scale");
  }
}

}  // namespace commfind::detail
