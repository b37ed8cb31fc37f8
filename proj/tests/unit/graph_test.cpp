#include <gtest/gtest.h>

#include <cmath>

#include "builders.hpp"
#include "commfind/errors.hpp"
#include "commfind/graph.hpp"
#include "commfind/oracle.hpp"
#include "commfind/rng.hpp"

namespace commfind {
namespace {

using namespace commfind::testing;

TEST(Graph, RejectsSelfLoopsDuplicatesAndOutOfRange) {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> far{{0, 5}};
  EXPECT_THROW(Graph::from_edges(3, loop), InvalidInputError);
  EXPECT_THROW(Graph::from_edges(3, dup), InvalidInputError);
  EXPECT_THROW(Graph::from_edges(3, far), InvalidInputError);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  const Graph g = random_graph(40, 0.2, 3);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (NodeId v : nb) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(g.has_edge(v, u));
    }
  }
}

TEST(Neighborhood, Examples) {
  EXPECT_EQ(neighborhood(complete_graph(3), 0), (NodeSet{1, 2}));
  EXPECT_EQ(neighborhood(Graph::from_edges(2, {}), 1), NodeSet{});
  EXPECT_EQ(neighborhood(complete_graph(5), 3), (NodeSet{0, 1, 2, 4}));
  EXPECT_THROW(neighborhood(complete_graph(3), 3), InvalidInputError);
}

TEST(NeighborhoodOfSet, Examples) {
  const Graph path = path_graph(3);
  EXPECT_EQ(neighborhood_of_set(path, NodeSet{0}), (NodeSet{0, 1}));
  EXPECT_EQ(neighborhood_of_set(path, NodeSet{0, 2}), (NodeSet{0, 1, 2}));
  const Graph two = with_cliques(6, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(neighborhood_of_set(two, NodeSet{0, 3}), (NodeSet{0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(neighborhood_of_set(path, NodeSet{}), InvalidInputError);
}

TEST(CommonNeighborCount, Examples) {
  EXPECT_EQ(common_neighbor_count(complete_graph(3), 0, 2), 1u);
  EXPECT_EQ(common_neighbor_count(star_graph(4), 1, 3), 1u);
  EXPECT_EQ(common_neighbor_count(complete_bipartite(2, 6), 0, 1), 6u);
  EXPECT_THROW(common_neighbor_count(complete_graph(3), 1, 1), InvalidInputError);
}

TEST(CommonNeighborCount, MatchesDirectPathCountOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = random_graph(50, 0.15, seed);
    const PathCounts paths = count_length2_paths_matrix(g);
    for (NodeId u = 0; u < 50; ++u)
      for (NodeId v = u + 1; v < 50; ++v) ASSERT_EQ(common_neighbor_count(g, u, v), paths.at(u, v));
  }
}

TEST(AdjacencyFraction, Examples) {
  const Graph k5 = complete_graph(5);
  const NodeSet all{0, 1, 2, 3, 4};
  const Fraction f = adjacency_fraction(k5, 2, all);
  EXPECT_EQ(f.count, 5u);
  EXPECT_EQ(f.total, 5u);
  const Graph plus = with_cliques(6, {{0, 1, 2, 3, 4}}, {{5, 0}, {5, 1}});
  const Fraction out = adjacency_fraction(plus, 5, all);
  EXPECT_EQ(out.count, 2u);
  EXPECT_DOUBLE_EQ(out.value(), 0.4);
  EXPECT_DOUBLE_EQ(adjacency_fraction(plus, 3, NodeSet{3}).value(), 1.0);
}

TEST(AdjacencyFraction, SelfExclusiveCountsOnlyEdges) {
  const Graph k5 = complete_graph(5);
  const Fraction f = adjacency_fraction(k5, 2, NodeSet{0, 1, 2, 3, 4}, Counting::kSelfExclusive);
  EXPECT_EQ(f.count, 4u);
}

TEST(AdjacencyFraction, InUnitIntervalAndOneInsideClosedNeighborhood) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(25, 0.3, seed);
    RngStream rng(seed, 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      NodeSet closed = set_union(neighborhood(g, v), NodeSet{v});
      const NodeSet sub = bernoulli_subsample(closed, 0.5, rng);
      if (!sub.empty()) EXPECT_DOUBLE_EQ(adjacency_fraction(g, v, sub).value(), 1.0);
      const NodeSet any = bernoulli_subsample(NodeSet::from_unsorted([&] {
                                                std::vector<NodeId> ids(g.node_count());
                                                for (NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
                                                return ids;
                                              }()),
                                              0.4, rng);
      if (any.empty()) continue;
      const double x = adjacency_fraction(g, v, any).value();
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(IsAlphaEpsilonSet, Examples) {
  const NodeSet k5{0, 1, 2, 3, 4};
  EXPECT_TRUE(is_alpha_epsilon_set(complete_graph(5), k5, 1.0, 0.5));
  const Graph three = with_cliques(6, {{0, 1, 2, 3, 4}}, {{5, 0}, {5, 1}, {5, 2}});
  EXPECT_FALSE(is_alpha_epsilon_set(three, k5, 1.0, 0.5));
  const Graph two = with_cliques(6, {{0, 1, 2, 3, 4}}, {{5, 0}, {5, 1}});
  EXPECT_TRUE(is_alpha_epsilon_set(two, k5, 1.0, 0.5));
  EXPECT_THROW(is_alpha_epsilon_set(two, k5, 0.4, 0.5), InvalidInputError);
  EXPECT_THROW(is_alpha_epsilon_set(two, NodeSet{}, 1.0, 0.5), InvalidInputError);
}

TEST(IsAlphaEpsilonSet, AgreesWithDefinitionOnRandomSets) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(12, 0.5, seed);
    RngStream rng(seed, 9);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<NodeId> ids;
      for (NodeId v = 0; v < 12; ++v)
        if (rng.bernoulli(0.5)) ids.push_back(v);
      if (ids.empty()) continue;
      const NodeSet s = NodeSet::from_sorted(ids);
      const double alpha = rng.uniform(0.3, 1.0);
      const double out = rng.uniform(0.0, alpha);
      EXPECT_EQ(is_alpha_epsilon_set(g, s, alpha, out), reference_alpha_set(g, s, alpha, out));
    }
  }
}

TEST(IsAlphaEpsilonSet, OneZeroMeansIsolatedClique) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(10, 0.6, seed);
    for (std::uint32_t mask = 1; mask < (1u << 10); mask += 7) {
      std::vector<NodeId> ids;
      for (NodeId v = 0; v < 10; ++v)
        if (mask >> v & 1u) ids.push_back(v);
      const NodeSet s = NodeSet::from_sorted(ids);
      if (!is_alpha_epsilon_set(g, s, 1.0, 0.0)) continue;
      EXPECT_TRUE(reference_is_clique(g, s));
      for (NodeId v = 0; v < 10; ++v) {
        if (s.contains(v)) continue;
        for (NodeId u : s) EXPECT_FALSE(g.has_edge(u, v));
      }
    }
  }
}

TEST(Thresholds, ExactTiesLandOnTheIntendedSide) {
  EXPECT_TRUE(at_least(2, 5, 0.4));
  EXPECT_FALSE(more_than(2, 5, 0.4));
  EXPECT_TRUE(at_most(2, 5, 0.4));
  EXPECT_FALSE(less_than(2, 5, 0.4));
  EXPECT_TRUE(at_least(7, 10, 0.7));
  EXPECT_TRUE(at_most(3, 10, 0.1 * 3));
}

TEST(BernoulliSubsample, Extremes) {
  const NodeSet s{1, 4, 7, 9};
  RngStream rng(5, 0);
  EXPECT_EQ(bernoulli_subsample(s, 0.0, rng), NodeSet{});
  EXPECT_EQ(bernoulli_subsample(s, 1.0, rng), s);
  EXPECT_THROW(bernoulli_subsample(s, 1.5, rng), InvalidInputError);
}

TEST(BernoulliSubsample, MeanSizeWithinBinomialBand) {
  std::vector<NodeId> ids(1000);
  for (NodeId i = 0; i < 1000; ++i) ids[i] = i;
  const NodeSet s = NodeSet::from_sorted(ids);
  double total = 0;
  const int seeds = 500;
  for (int seed = 0; seed < seeds; ++seed) {
    RngStream rng(static_cast<std::uint64_t>(seed), 0);
    total += static_cast<double>(bernoulli_subsample(s, 0.1, rng).size());
  }
  const double mean = total / seeds;
  // Expected 100 with band 100 +- 3 sqrt(90).
  EXPECT_NEAR(mean, 100.0, 3.0 * std::sqrt(90.0));
  // The mean of 500 draws is much tighter: 3 sigma / sqrt(500).
  EXPECT_NEAR(mean, 100.0, 3.0 * std::sqrt(90.0 / seeds));
}

TEST(BernoulliSubsample, SameStreamSameResult) {
  const NodeSet s = NodeSet::from_unsorted({3, 1, 2, 8, 13, 21, 34, 55});
  RngStream a(11, 4);
  RngStream b(11, 4);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(bernoulli_subsample(s, 0.5, a), bernoulli_subsample(s, 0.5, b));
}

TEST(InducedSubgraph, Examples) {
  const InducedSubgraph k3 = induced_subgraph(complete_graph(5), NodeSet{0, 2, 4});
  EXPECT_EQ(k3.graph, complete_graph(3));
  const InducedSubgraph empty = induced_subgraph(complete_graph(5), NodeSet{});
  EXPECT_EQ(empty.graph.node_count(), 0u);
  const InducedSubgraph p = induced_subgraph(path_graph(4), NodeSet{0, 2, 3});
  EXPECT_EQ(p.graph.edge_count(), 1u);
  const auto e = p.graph.edges().front();
  EXPECT_EQ(p.to_parent[e.u], 2u);
  EXPECT_EQ(p.to_parent[e.v], 3u);
}

TEST(InducedSubgraph, RoundTripReproducesMembersAndInternalEdges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(30, 0.25, seed);
    RngStream rng(seed, 2);
    std::vector<NodeId> all(30);
    for (NodeId i = 0; i < 30; ++i) all[i] = i;
    const NodeSet s = bernoulli_subsample(NodeSet::from_sorted(all), 0.5, rng);
    const InducedSubgraph sub = induced_subgraph(g, s);
    std::vector<NodeId> local(sub.graph.node_count());
    for (NodeId i = 0; i < local.size(); ++i) local[i] = i;
    EXPECT_EQ(sub.map_back(NodeSet::from_sorted(local)), s);
    std::size_t internal = 0;
    for (const Edge& e : g.edges()) internal += s.contains(e.u) && s.contains(e.v);
    EXPECT_EQ(sub.graph.edge_count(), internal);
    for (const Edge& e : sub.graph.edges()) EXPECT_TRUE(g.has_edge(sub.to_parent[e.u], sub.to_parent[e.v]));
  }
}

TEST(NodeSet, SetOperations) {
  const NodeSet a{1, 3, 5, 7};
  const NodeSet b{3, 4, 5};
  EXPECT_EQ(set_union(a, b), (NodeSet{1, 3, 4, 5, 7}));
  EXPECT_EQ(set_intersection(a, b), (NodeSet{3, 5}));
  EXPECT_EQ(set_difference(a, b), (NodeSet{1, 7}));
  EXPECT_EQ(intersection_size(a.ids(), b.ids()), 2u);
  EXPECT_EQ(NodeSet::from_unsorted({5, 1, 5, 3}), (NodeSet{1, 3, 5}));
}

}  // namespace
}  // namespace commfind
