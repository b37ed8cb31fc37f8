#include <gtest/gtest.h>

#include "builders.hpp"
#include "commfind/generator.hpp"
#include "commfind/validator.hpp"

namespace commfind {
namespace {

using namespace commfind::testing;

std::vector<NodeId> range(NodeId lo, NodeId hi) {
  std::vector<NodeId> v;
  for (NodeId i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

GroundTruth truth_of(std::vector<NodeSet> communities) {
  GroundTruth t;
  t.communities = std::move(communities);
  return t;
}

ModelParams clique_model(std::size_t n, std::size_t k, double epsilon) {
  ModelParams p;
  p.n = n;
  p.k = k;
  p.epsilon = epsilon;
  return p;
}

TEST(CheckGap, IsolatedCliquePasses) {
  const Graph g = with_cliques(12, {range(0, 10)});
  const auto r = check_gap(g, truth_of({NodeSet::from_sorted(range(0, 10))}), clique_model(12, 10, 0.3));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(CheckGap, OutsiderAdjacentToNineFails) {
  std::vector<Edge> extra;
  for (NodeId u = 0; u < 9; ++u) extra.push_back({u, 10});
  const Graph g = with_cliques(11, {range(0, 10)}, extra);
  const auto r = check_gap(g, truth_of({NodeSet::from_sorted(range(0, 10))}), clique_model(11, 10, 0.3));
  ASSERT_FALSE(r.passed);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].node, 10u);
  EXPECT_DOUBLE_EQ(r.witnesses[0].value, 0.9);
  EXPECT_LT(r.worst_margin, 0.0);
}

TEST(CheckGap, BoundaryFractionFailsBecauseTheGapIsStrict) {
  // 7 of 10 against 1 - 0.3 = 0.7: not strictly below.
  std::vector<Edge> extra;
  for (NodeId u = 0; u < 7; ++u) extra.push_back({u, 10});
  const Graph g = with_cliques(11, {range(0, 10)}, extra);
  EXPECT_FALSE(check_gap(g, truth_of({NodeSet::from_sorted(range(0, 10))}), clique_model(11, 10, 0.3)).passed);
}

TEST(CheckGap, GapStressWitnessesAreExactlyTheStressNodes) {
  ModelParams p = clique_model(120, 40, 0.4);
  AmbientSpec a;
  a.strategy = AmbientStrategy::kGapStress;
  a.stress_count = 3;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GeneratedInstance inst = generate(p, a, seed);
    const auto r = check_gap(inst.graph, inst.truth, p);
    std::vector<NodeId> nodes;
    for (const auto& w : r.witnesses) nodes.push_back(w.node);
    EXPECT_EQ(nodes, inst.truth.stress_nodes);
  }
}

TEST(CheckGap, RemovingWitnessEdgesRepairsTheCheck) {
  ModelParams p = clique_model(120, 40, 0.4);
  AmbientSpec a;
  a.strategy = AmbientStrategy::kGapStress;
  a.stress_count = 2;
  const GeneratedInstance inst = generate(p, a, 3);
  const auto r = check_gap(inst.graph, inst.truth, p);
  ASSERT_FALSE(r.passed);
  std::vector<Edge> kept;
  for (const Edge& e : inst.graph.edges()) {
    bool touches = false;
    for (const auto& w : r.witnesses) touches |= e.u == w.node || e.v == w.node;
    if (!touches) kept.push_back(e);
  }
  EXPECT_TRUE(check_gap(Graph::from_edges(inst.graph.node_count(), kept), inst.truth, p).passed);
}

TEST(CheckGamma, NoAmbientEdgesPasses) {
  ModelParams p = clique_model(100, 30, 0.5);
  p.community_count = 2;
  p.gamma = 1.0;
  const GeneratedInstance inst = generate(p, {}, 1);
  EXPECT_TRUE(check_gamma(inst.graph, inst.truth, p).passed);
}

TEST(CheckGamma, ThreeCommunityAndSevenAmbientEdgesFails) {
  // Node 0 is in {0,1,2,3}; its other 7 edges go to community-less nodes.
  std::vector<Edge> extra;
  for (NodeId v = 4; v < 11; ++v) extra.push_back({0, v});
  const Graph g = with_cliques(11, {{0, 1, 2, 3}}, extra);
  ModelParams p = clique_model(11, 4, 0.5);
  p.gamma = 0.5;
  const auto r = check_gamma(g, truth_of({NodeSet{0, 1, 2, 3}}), p);
  ASSERT_FALSE(r.passed);
  bool found = false;
  for (const auto& w : r.witnesses) {
    if (w.node == 0) {
      found = true;
      EXPECT_DOUBLE_EQ(w.value, 0.3);
    }
  }
  EXPECT_TRUE(found);
}

Graph gamma_prime_graph(std::size_t ambient) {
  std::vector<Edge> extra;
  for (NodeId v = 10; v < 10 + ambient; ++v) extra.push_back({0, v});
  return with_cliques(10 + ambient, {range(0, 10)}, extra);
}

TEST(CheckGammaPrime, Boundary) {
  ModelParams p = clique_model(60, 10, 0.5);
  p.gamma = 0.5;
  p.d = 2;
  const GroundTruth t = truth_of({NodeSet::from_sorted(range(0, 10))});
  EXPECT_TRUE(check_gamma_prime(gamma_prime_graph(0), t, p).passed);
  EXPECT_TRUE(check_gamma_prime(gamma_prime_graph(40), t, p).passed);  // 10 >= 10
  const auto r = check_gamma_prime(gamma_prime_graph(44), t, p);    // 10 < 11
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witnesses[0].node, 0u);
  EXPECT_DOUBLE_EQ(r.witnesses[0].bound, 11.0);
}

TEST(CheckDistinctness, SingleMembershipPasses) {
  ModelParams p = clique_model(100, 20, 0.5);
  p.community_count = 3;
  p.beta = 1.0;
  const GeneratedInstance inst = generate(p, {}, 5);
  EXPECT_TRUE(check_distinctness(inst.graph, inst.truth, p).passed);
}

TEST(CheckDistinctness, IdenticalCommunitiesFail) {
  const Graph g = complete_graph(5);
  ModelParams p = clique_model(5, 5, 0.5);
  p.d = 2;
  p.beta = 0.1;
  EXPECT_FALSE(check_distinctness(g, truth_of({NodeSet{0, 1, 2, 3, 4}, NodeSet{0, 1, 2, 3, 4}}), p).passed);
}

TEST(CheckOverlapAndSizes, GeneratorOutputPasses) {
  ModelParams p = clique_model(300, 50, 0.5);
  p.d = 2;
  p.delta = 0.6;
  p.community_count = 6;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GeneratedInstance inst = generate(p, {}, seed);
    EXPECT_TRUE(check_overlap_and_sizes(inst.truth, p).passed);
  }
}

TEST(CheckOverlapAndSizes, TooManyMembershipsFail) {
  ModelParams p = clique_model(6, 3, 0.5);
  p.d = 2;
  p.delta = 0.5;
  const auto r = check_overlap_and_sizes(truth_of({NodeSet{0, 1}, NodeSet{0, 2}, NodeSet{0, 3}}), p);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witnesses[0].node, 0u);
}

TEST(CheckOverlapAndSizes, SparseIntersectionAboveCapFails) {
  ModelParams p;
  p.model = ModelKind::kSparse;
  p.n = 800;
  p.k = 400;
  p.d = 2;
  p.b = 12;  // cap 400 / 80 = 5
  const NodeSet a = NodeSet::from_sorted(range(0, 400));
  EXPECT_TRUE(check_overlap_and_sizes(truth_of({a, NodeSet::from_sorted(range(395, 795))}), p).passed);
  EXPECT_FALSE(check_overlap_and_sizes(truth_of({a, NodeSet::from_sorted(range(394, 794))}), p).passed);
}

TEST(CheckRegularity, CliquePasses) {
  const Graph g = with_cliques(20, {range(0, 12)});
  EXPECT_TRUE(check_regularity_empirical(g, truth_of({NodeSet::from_sorted(range(0, 12))}),
                                         clique_model(20, 12, 0.2))
                  .passed);
}

TEST(CheckRegularity, TwoCliquesDeclaredAsOneFail) {
  const Graph g = with_cliques(20, {range(0, 10), range(10, 20)});
  ModelParams p = clique_model(20, 20, 0.3);
  const auto r = check_regularity_empirical(g, truth_of({NodeSet::from_sorted(range(0, 20))}), p);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(CheckRegularity, ExpectedDegreeCommunityOfTwoHundred) {
  ModelParams p;
  p.model = ModelKind::kDenseSimilar;
  p.n = 200;
  p.k = 200;
  p.alpha = 0.7;
  p.epsilon = 0.3;
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GeneratedInstance inst = generate(p, {}, seed);
    passed += check_regularity_empirical(inst.graph, inst.truth, p).passed;
  }
  EXPECT_GE(passed, 90);
}

TEST(ValidateInstance, ApplicabilityFollowsTheModel) {
  ModelParams p = clique_model(100, 30, 0.5);
  const GeneratedInstance inst = generate(p, {}, 2);
  const AssumptionReport r = validate_instance(inst.graph, inst.truth, p);
  EXPECT_TRUE(r.all_passed());
  EXPECT_TRUE(r.at("gap").applicable);
  EXPECT_FALSE(r.at("gamma_prime").applicable);
  EXPECT_FALSE(r.at("distinctness").applicable);
  ModelParams s;
  s.model = ModelKind::kSparse;
  s.n = 300;
  s.k = 144;
  s.b = 12;
  const GeneratedInstance sp = generate(s, {}, 2);
  EXPECT_FALSE(validate_instance(sp.graph, sp.truth, s).at("gap").applicable);
}

TEST(ValidateInstance, FailedChecksAlwaysCarryWitnesses) {
  ModelParams p = clique_model(120, 40, 0.4);
  AmbientSpec a;
  a.strategy = AmbientStrategy::kGapStress;
  a.stress_count = 2;
  const GeneratedInstance inst = generate(p, a, 8);
  const AssumptionReport r = validate_instance(inst.graph, inst.truth, p);
  EXPECT_FALSE(r.all_passed());
  for (const auto& c : r.checks) {
    if (!c.passed) EXPECT_FALSE(c.witnesses.empty()) << c.name;
  }
}

TEST(AuditUnplantedSets, ReportsOnlySetsMissingFromTruth) {
  // Two disjoint K4s; only one is declared.
  const Graph g = with_cliques(8, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  const auto extra = audit_unplanted_sets(g, truth_of({NodeSet{0, 1, 2, 3}}), 1.0, 0.5, 3);
  ASSERT_EQ(extra.size(), 1u);
  EXPECT_EQ(extra[0], (NodeSet{4, 5, 6, 7}));
}

}  // namespace
}  // namespace commfind
