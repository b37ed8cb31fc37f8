#include "commfind/validator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "commfind/errors.hpp"
#include "commfind/oracle.hpp"
#include "detail/bitset.hpp"

namespace commfind {

namespace {

constexpr std::size_t kMaxPairWitnesses = 1000;

using Memberships = std::vector<std::vector<std::uint32_t>>;

bool share(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

CheckResult start(const char* name) {
  CheckResult r;
  r.name = name;
  r.worst_margin = std::numeric_limits<double>::infinity();
  return r;
}

void finish(CheckResult& r) {
  r.passed = r.witnesses.empty();
  if (std::isinf(r.worst_margin)) r.worst_margin = 0.0;
}

void require_graph_size(const Graph& g, const GroundTruth& truth) {
  (void)truth.memberships(g.node_count());  // throws on out-of-range ids
}

// Edge probability of a pair sharing community c, raised to the max over
// every other community both belong to.
double pair_probability(const GroundTruth& truth, const ModelParams& params,
                        const Memberships& member_of, NodeId u, NodeId w) {
  if (params.model == ModelKind::kSparse) {
    return params.b / std::sqrt(static_cast<double>(params.k));
  }
  double best = 0.0;
  for (std::uint32_t c : member_of[u]) {
    if (!std::binary_search(member_of[w].begin(), member_of[w].end(), c)) continue;
    double pu, pw;
    if (truth.has_affinities()) {
      pu = truth.affinity(u, c);
      pw = truth.affinity(w, c);
    } else {
      pu = pw = std::sqrt(density_floor(truth, params, c));
    }
    best = std::max(best, pu * pw);
  }
  return best;
}

}  // namespace

bool AssumptionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.applicable || c.passed; });
}

const CheckResult& AssumptionReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named " + name);
}

CheckResult check_gap(const Graph& g, const GroundTruth& truth, const ModelParams& params) {
  require_graph_size(g, truth);
  CheckResult r = start("gap");
  std::vector<std::uint32_t> count(g.node_count(), 0);
  std::vector<NodeId> touched;
  for (std::size_t c = 0; c < truth.communities.size(); ++c) {
    const NodeSet& members = truth.communities[c];
    if (members.empty()) continue;
    const double bound = density_floor(truth, params, c) - params.epsilon;
    for (NodeId u : members) {
      for (NodeId w : g.neighbors(u)) {
        if (count[w]++ == 0) touched.push_back(w);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (NodeId w : touched) {
      if (members.contains(w)) continue;
      const Fraction f{count[w], members.size()};
      r.worst_margin = std::min(r.worst_margin, bound - f.value());
      if (at_least(f.count, f.total, bound)) {
        r.witnesses.push_back({w, std::nullopt, c, std::nullopt, f, f.value(), bound});
      }
    }
    if (touched.size() + members.size() < g.node_count()) {
      r.worst_margin = std::min(r.worst_margin, bound);
    }
    for (NodeId w : touched) count[w] = 0;
    touched.clear();
  }
  finish(r);
  return r;
}

CheckResult check_gamma(const Graph& g, const GroundTruth& truth, const ModelParams& params) {
  const auto member_of = truth.memberships(g.node_count());
  CheckResult r = start("gamma");
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t deg = g.degree(v);
    if (deg == 0) continue;
    std::size_t community_edges = 0;
    for (NodeId w : g.neighbors(v)) {
      if (share(member_of[v], member_of[w])) ++community_edges;
    }
    const Fraction f{community_edges, deg};
    r.worst_margin = std::min(r.worst_margin, f.value() - params.gamma);
    if (less_than(f.count, f.total, params.gamma)) {
      r.witnesses.push_back({v, std::nullopt, std::nullopt, std::nullopt, f, f.value(),
                             params.gamma});
    }
  }
  finish(r);
  return r;
}

CheckResult check_gamma_prime(const Graph& g, const GroundTruth& truth,
                              const ModelParams& params) {
  const auto member_of = truth.memberships(g.node_count());
  CheckResult r = start("gamma_prime");
  const double ratio = params.gamma / static_cast<double>(params.d);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::size_t ambient = 0;
    for (NodeId w : g.neighbors(v)) {
      if (!share(member_of[v], member_of[w])) ++ambient;
    }
    const double bound = ratio * static_cast<double>(ambient);
    for (std::uint32_t c : member_of[v]) {
      const double size = static_cast<double>(truth.communities[c].size());
      r.worst_margin = std::min(r.worst_margin, size - bound);
      if (size < bound - 1e-9) {
        r.witnesses.push_back({v, std::nullopt, c, std::nullopt,
                               Fraction{ambient, 1}, size, bound});
      }
    }
  }
  finish(r);
  return r;
}

CheckResult check_distinctness(const Graph& g, const GroundTruth& truth,
                               const ModelParams& params) {
  const auto member_of = truth.memberships(g.node_count());
  CheckResult r = start("distinctness");
  for (std::size_t c = 0; c < truth.communities.size(); ++c) {
    const NodeSet& members = truth.communities[c];
    for (NodeId u : members) {
      NodeSet others;
      for (std::uint32_t o : member_of[u]) {
        if (o != c) others = set_union(others, truth.communities[o]);
      }
      const std::size_t own = members.size() - intersection_size(members.ids(), others.ids());
      const Fraction f{own, members.size()};
      r.worst_margin = std::min(r.worst_margin, f.value() - params.beta);
      if (less_than(f.count, f.total, params.beta)) {
        r.witnesses.push_back({u, std::nullopt, c, std::nullopt, f, f.value(), params.beta});
      }
    }
  }
  finish(r);
  return r;
}

CheckResult check_overlap_and_sizes(const GroundTruth& truth, const ModelParams& params) {
  CheckResult r = start("overlap_and_sizes");
  std::size_t max_id = 0;
  for (const auto& c : truth.communities) {
    if (!c.empty()) max_id = std::max<std::size_t>(max_id, c.ids().back() + 1);
  }
  const auto member_of = truth.memberships(std::max(max_id, params.n));
  for (NodeId v = 0; v < member_of.size(); ++v) {
    const std::size_t count = member_of[v].size();
    const double d = static_cast<double>(params.d);
    r.worst_margin = std::min(r.worst_margin, d - static_cast<double>(count));
    if (count > params.d) {
      r.witnesses.push_back({v, std::nullopt, std::nullopt, std::nullopt, Fraction{count, 1},
                             static_cast<double>(count), d});
    }
  }
  std::size_t lo = 0;
  std::size_t hi = params.k;
  switch (params.model) {
    case ModelKind::kAnySizeClique:
    case ModelKind::kAnySizeDense:
      lo = params.m;
      break;
    case ModelKind::kSparse:
      lo = params.k;
      break;
    default:
      lo = static_cast<std::size_t>(std::ceil(params.delta * static_cast<double>(params.k) - 1e-9));
  }
  for (std::size_t c = 0; c < truth.communities.size(); ++c) {
    const std::size_t size = truth.communities[c].size();
    const double margin = std::min(static_cast<double>(size) - static_cast<double>(lo),
                                   static_cast<double>(hi) - static_cast<double>(size));
    r.worst_margin = std::min(r.worst_margin, margin);
    if (size < lo || size > hi) {
      const NodeId first = size ? truth.communities[c][0] : 0;
      r.witnesses.push_back({first, std::nullopt, c, std::nullopt, Fraction{size, 1},
                             static_cast<double>(size), static_cast<double>(size < lo ? lo : hi)});
    }
  }
  if (params.model == ModelKind::kSparse) {
    const double cap = static_cast<double>(params.k) /
                       (20.0 * static_cast<double>(params.d * params.d));
    for (std::size_t a = 0; a < truth.communities.size(); ++a) {
      for (std::size_t b = a + 1; b < truth.communities.size(); ++b) {
        const std::size_t inter =
            intersection_size(truth.communities[a].ids(), truth.communities[b].ids());
        r.worst_margin = std::min(r.worst_margin, cap - static_cast<double>(inter));
        if (static_cast<double>(inter) > cap + 1e-9) {
          const NodeSet both = set_intersection(truth.communities[a], truth.communities[b]);
          r.witnesses.push_back({both[0], std::nullopt, a, b, Fraction{inter, 1},
                                 static_cast<double>(inter), cap});
        }
      }
    }
  }
  finish(r);
  return r;
}

CheckResult check_regularity_empirical(const Graph& g, const GroundTruth& truth,
                                       const ModelParams& params) {
  const auto member_of = truth.memberships(g.node_count());
  CheckResult r = start("regularity");
  const double e = params.epsilon;
  for (std::size_t c = 0; c < truth.communities.size(); ++c) {
    const NodeSet& members = truth.communities[c];
    const std::size_t s = members.size();
    if (s == 0) continue;
    const double alpha_c = density_floor(truth, params, c);
    std::vector<detail::BitSet> rows(s, detail::BitSet(s));
    for (std::size_t i = 0; i < s; ++i) {
      rows[i].set(i);
      for (NodeId w : g.neighbors(members[i])) {
        auto it = std::lower_bound(members.begin(), members.end(), w);
        if (it != members.end() && *it == w) rows[i].set(static_cast<std::size_t>(it - members.begin()));
      }
    }
    std::vector<std::size_t> internal(s);
    for (std::size_t i = 0; i < s; ++i) {
      internal[i] = rows[i].count();
      double expected = 1.0;
      for (std::size_t j = 0; j < s; ++j) {
        if (j != i) expected += pair_probability(truth, params, member_of, members[i], members[j]);
      }
      const double deg = static_cast<double>(internal[i]);
      const double margin = std::min(deg - (1.0 - e) * expected, (1.0 + e) * expected - deg);
      r.worst_margin = std::min(r.worst_margin, margin / expected);
      if (margin < -1e-9) {
        r.witnesses.push_back({members[i], std::nullopt, c, std::nullopt,
                               Fraction{internal[i], s}, deg, expected});
      }
    }
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        if (i == j) continue;
        const std::size_t common = detail::BitSet::and_count(rows[i], rows[j]);
        const double bound = (1.0 - e) * alpha_c * static_cast<double>(internal[j]);
        r.worst_margin = std::min(r.worst_margin,
                                  (static_cast<double>(common) - bound) /
                                      static_cast<double>(internal[j]));
        if (static_cast<double>(common) < bound - 1e-9 && r.witnesses.size() < kMaxPairWitnesses) {
          r.witnesses.push_back({members[i], members[j], c, std::nullopt,
                                 Fraction{common, internal[j]}, static_cast<double>(common),
                                 bound});
        }
      }
    }
  }
  finish(r);
  return r;
}

AssumptionReport validate_instance(const Graph& g, const GroundTruth& truth,
                                   const ModelParams& params) {
  AssumptionReport report;
  const bool any_size_clique = params.model == ModelKind::kAnySizeClique;
  report.checks.push_back(check_overlap_and_sizes(truth, params));
  report.checks.push_back(check_gap(g, truth, params));
  report.checks.back().applicable = params.model != ModelKind::kSparse;
  report.checks.push_back(check_gamma(g, truth, params));
  report.checks.push_back(check_gamma_prime(g, truth, params));
  report.checks.back().applicable = any_size_clique;
  report.checks.push_back(check_distinctness(g, truth, params));
  report.checks.back().applicable = any_size_clique;
  report.checks.push_back(check_regularity_empirical(g, truth, params));
  return report;
}

std::vector<NodeSet> audit_unplanted_sets(const Graph& g, const GroundTruth& truth, double alpha,
                                          double alpha_out, std::size_t min_size) {
  std::vector<NodeSet> out;
  for (NodeSet& s : enumerate_alpha_epsilon_sets(g, alpha, alpha_out, min_size)) {
    if (std::find(truth.communities.begin(), truth.communities.end(), s) ==
        truth.communities.end()) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace commfind
