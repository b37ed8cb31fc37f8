#include <gtest/gtest.h>

#include <algorithm>

#include "builders.hpp"
#include "commfind/errors.hpp"
#include "commfind/evaluation.hpp"
#include "commfind/oracle.hpp"

namespace commfind {
namespace {

using namespace commfind::testing;

TEST(MaximalCliques, Examples) {
  EXPECT_EQ(enumerate_maximal_cliques(complete_graph(5), 1),
            (std::vector<NodeSet>{NodeSet{0, 1, 2, 3, 4}}));
  const auto c5 = enumerate_maximal_cliques(cycle_graph(5), 2);
  EXPECT_EQ(c5, (std::vector<NodeSet>{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}}));
  const Graph two = with_cliques(6, {{0, 1, 2, 3}, {2, 3, 4, 5}});
  EXPECT_EQ(enumerate_maximal_cliques(two, 2), (std::vector<NodeSet>{{0, 1, 2, 3}, {2, 3, 4, 5}}));
}

TEST(MaximalCliques, NonNestedAndMaximal) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(25, 0.4, seed);
    const auto cliques = enumerate_maximal_cliques(g, 1);
    for (std::size_t i = 0; i < cliques.size(); ++i) {
      EXPECT_TRUE(reference_is_clique(g, cliques[i]));
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (cliques[i].contains(v)) continue;
        bool all = true;
        for (NodeId u : cliques[i]) all &= g.has_edge(u, v);
        EXPECT_FALSE(all) << "clique extends by " << v;
      }
      for (std::size_t j = 0; j < cliques.size(); ++j) {
        if (i == j) continue;
        EXPECT_FALSE(std::includes(cliques[j].begin(), cliques[j].end(), cliques[i].begin(),
                                   cliques[i].end()));
      }
    }
  }
}

TEST(MaximalCliques, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_maximal_cliques(random_graph(60, 0.5, 1), 1, 10), BudgetExceededError);
}

TEST(AlphaSets, IsolatedK4GivesExactlyK4) {
  const Graph g = with_cliques(6, {{0, 1, 2, 3}});
  EXPECT_EQ(enumerate_alpha_epsilon_sets(g, 1.0, 0.5, 3), (std::vector<NodeSet>{{0, 1, 2, 3}}));
}

TEST(AlphaSets, EdgelessGraphHasNone) {
  EXPECT_TRUE(enumerate_alpha_epsilon_sets(Graph::from_edges(8, {}), 0.6, 0.3, 2).empty());
}

TEST(AlphaSets, CompleteAndSoundAgainstTheDefinition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = random_graph(10, 0.5, seed);
    const auto sets = enumerate_alpha_epsilon_sets(g, 0.7, 0.4, 2);
    for (std::uint32_t mask = 1; mask < (1u << 10); ++mask) {
      std::vector<NodeId> ids;
      for (NodeId v = 0; v < 10; ++v)
        if (mask >> v & 1u) ids.push_back(v);
      if (ids.size() < 2) continue;
      const NodeSet s = NodeSet::from_sorted(ids);
      const bool listed = std::binary_search(sets.begin(), sets.end(), s);
      EXPECT_EQ(listed, is_alpha_epsilon_set(g, s, 0.7, 0.4));
    }
  }
}

TEST(AlphaSets, LargeGraphsAreRefused) {
  EXPECT_THROW(enumerate_alpha_epsilon_sets(Graph::from_edges(21, {}), 1, 0.5, 1), BudgetExceededError);
}

TEST(PathCounts, Examples) {
  const PathCounts tri = count_length2_paths_matrix(complete_graph(3));
  EXPECT_EQ(tri.at(0, 1), 1u);
  EXPECT_EQ(tri.at(1, 2), 1u);
  const PathCounts star = count_length2_paths_matrix(star_graph(6));
  EXPECT_EQ(star.at(1, 2), 1u);
  EXPECT_EQ(star.at(0, 3), 0u);
}

TEST(Jaccard, Basics) {
  EXPECT_DOUBLE_EQ(jaccard(NodeSet{1, 2, 3}, NodeSet{2, 3, 4}), 0.5);
  EXPECT_DOUBLE_EQ(jaccard(NodeSet{}, NodeSet{}), 1.0);
}

TEST(MatchCommunities, FoundEqualsTruth) {
  const std::vector<NodeSet> truth{{0, 1, 2}, {3, 4, 5, 6}};
  const MatchReport r = match_communities(truth, truth);
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.exact_recovery_rate, 1.0);
  for (const auto& c : r.communities) EXPECT_TRUE(c.exact);
}

TEST(MatchCommunities, EmptyFoundUsesPrecisionConvention) {
  const MatchReport r = match_communities({}, {NodeSet{0, 1}});
  EXPECT_TRUE(r.empty_found);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.0);
  EXPECT_DOUBLE_EQ(r.f1, 0.0);
}

TEST(MatchCommunities, PartialCommunity) {
  std::vector<NodeId> ten(10), eight(8);
  for (NodeId i = 0; i < 10; ++i) ten[i] = i;
  for (NodeId i = 0; i < 8; ++i) eight[i] = i;
  const MatchReport r = match_communities({NodeSet::from_sorted(eight)}, {NodeSet::from_sorted(ten)});
  EXPECT_DOUBLE_EQ(r.communities[0].jaccard, 0.8);
  EXPECT_FALSE(r.communities[0].exact);
}

TEST(MatchCommunities, TiesGoToTheSmallerCandidate) {
  const std::vector<NodeSet> found{{0, 1, 3}, {0, 1, 2}};
  const MatchReport r = match_communities(found, {NodeSet{0, 1}});
  EXPECT_EQ(r.communities[0].best_candidate, 1u);
}

TEST(MatchCommunities, RelabelingLeavesMetricsUnchanged) {
  const std::vector<NodeSet> truth{{0, 1, 2, 3}, {4, 5, 6}, {7, 8}};
  const std::vector<NodeSet> found{{0, 1, 2}, {4, 5, 6}, {1, 7, 8}, {2, 9}};
  const auto relabel = [](const std::vector<NodeSet>& sets) {
    std::vector<NodeSet> out;
    for (const auto& s : sets) {
      std::vector<NodeId> ids;
      for (NodeId v : s) ids.push_back(9 - v);
      out.push_back(NodeSet::from_unsorted(ids));
    }
    return out;
  };
  const MatchReport a = match_communities(found, truth, 0.6);
  const MatchReport b = match_communities(relabel(found), relabel(truth), 0.6);
  EXPECT_DOUBLE_EQ(a.precision, b.precision);
  EXPECT_DOUBLE_EQ(a.recall, b.recall);
  EXPECT_DOUBLE_EQ(a.mean_best_jaccard, b.mean_best_jaccard);
  EXPECT_DOUBLE_EQ(a.exact_recovery_rate, b.exact_recovery_rate);
}

TEST(RelaxedMatch, Examples) {
  std::vector<NodeId> ten(10);
  for (NodeId i = 0; i < 10; ++i) ten[i] = i;
  const NodeSet k10 = NodeSet::from_sorted(ten);
  const Graph g = with_cliques(11, {ten}, {{0, 10}, {1, 10}, {2, 10}, {3, 10}, {4, 10}});
  for (double e : {0.0, 0.1, 0.5}) EXPECT_TRUE(relaxed_match(k10, k10, g, e));
  EXPECT_FALSE(relaxed_match(NodeSet{0, 1, 2, 3, 4, 5, 6}, k10, g, 0.2));
  std::vector<NodeId> eleven = ten;
  eleven.push_back(10);
  EXPECT_FALSE(relaxed_match(NodeSet::from_sorted(eleven), k10, g, 0.2));
}

TEST(Wilson, KnownValues) {
  const Interval i = wilson_interval(50, 100);
  EXPECT_NEAR(i.lo, 0.4038, 1e-3);
  EXPECT_NEAR(i.hi, 0.5962, 1e-3);
  const Interval all = wilson_interval(10, 10);
  EXPECT_DOUBLE_EQ(all.hi, 1.0);
  EXPECT_GT(all.lo, 0.69);
}

}  // namespace
}  // namespace commfind
