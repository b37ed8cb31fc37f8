#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "commfind/errors.hpp"
#include "commfind/generator.hpp"
#include "commfind/oracle.hpp"

namespace commfind {
namespace {

ModelParams clique_params(std::size_t n, std::size_t k, std::size_t count, std::size_t d = 1) {
  ModelParams p;
  p.model = ModelKind::kCliqueSimilar;
  p.n = n;
  p.k = k;
  p.community_count = count;
  p.d = d;
  return p;
}

std::size_t max_memberships(const GroundTruth& t, std::size_t n) {
  std::size_t worst = 0;
  for (const auto& m : t.memberships(n)) worst = std::max(worst, m.size());
  return worst;
}

TEST(PlantMemberships, SingleFullSizeCommunity) {
  RngStream rng(1, 0);
  const GroundTruth t = plant_memberships(clique_params(100, 40, 1), rng);
  ASSERT_EQ(t.communities.size(), 1u);
  EXPECT_EQ(t.communities[0].size(), 40u);
}

TEST(PlantMemberships, SingleMembershipMeansDisjoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 0);
    ModelParams p = clique_params(200, 30, 5);
    p.delta = 0.5;
    const GroundTruth t = plant_memberships(p, rng);
    for (std::size_t a = 0; a < t.communities.size(); ++a)
      for (std::size_t b = a + 1; b < t.communities.size(); ++b)
        EXPECT_EQ(intersection_size(t.communities[a].ids(), t.communities[b].ids()), 0u);
  }
}

TEST(PlantMemberships, SizesStayInTheModelBand) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RngStream rng(seed, 0);
    ModelParams p = clique_params(300, 40, 6, 2);
    p.delta = 0.5;
    for (const auto& c : plant_memberships(p, rng).communities) {
      EXPECT_GE(c.size(), 20u);
      EXPECT_LE(c.size(), 40u);
    }
    ModelParams a = p;
    a.model = ModelKind::kAnySizeClique;
    a.m = 8;
    a.k = 64;
    RngStream rng2(seed, 0);
    for (const auto& c : plant_memberships(a, rng2).communities) {
      EXPECT_GE(c.size(), 8u);
      EXPECT_LE(c.size(), 64u);
    }
  }
}

TEST(PlantMemberships, AnySizeSizesAreLogUniform) {
  // Under a log-uniform law on [8, 64], sizes below the geometric midpoint
  // 8 * sqrt(8) ~ 22.6 should make up about half of all draws.
  ModelParams p = clique_params(4000, 64, 100, 1);
  p.model = ModelKind::kAnySizeClique;
  p.m = 8;
  std::size_t below = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 0);
    for (const auto& c : plant_memberships(p, rng).communities) {
      below += c.size() <= 22;
      ++total;
    }
  }
  const double frac = static_cast<double>(below) / static_cast<double>(total);
  EXPECT_NEAR(frac, 0.5, 0.06);
}

TEST(PlantMemberships, SparseIntersectionsRespectTheCap) {
  // k / (20 d^2) = 400 / 80 = 5.
  ModelParams p;
  p.model = ModelKind::kSparse;
  p.n = 1500;
  p.k = 400;
  p.d = 2;
  p.b = 12;
  p.community_count = 3;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed, 0);
    const GroundTruth t = plant_memberships(p, rng);
    for (std::size_t a = 0; a < t.communities.size(); ++a) {
      EXPECT_EQ(t.communities[a].size(), 400u);
      for (std::size_t b = a + 1; b < t.communities.size(); ++b)
        EXPECT_LE(intersection_size(t.communities[a].ids(), t.communities[b].ids()), 5u);
    }
  }
}

TEST(PlantMemberships, OverlapBoundAlwaysHolds) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RngStream rng(seed, 0);
    ModelParams p = clique_params(120, 50, 6, 2);
    p.delta = 0.6;
    EXPECT_LE(max_memberships(plant_memberships(p, rng), 120), 2u);
  }
}

TEST(PlantMemberships, InfeasibleDemandIsAnError) {
  RngStream rng(0, 0);
  EXPECT_THROW(plant_memberships(clique_params(100, 40, 3, 1), rng), GenerationInfeasibleError);
}

TEST(RealizeGraph, AffinityOneCommunitiesAreCliques) {
  const GeneratedInstance inst = generate(clique_params(150, 30, 4, 1), {}, 9);
  EXPECT_EQ(inst.graph.edge_count(), 4u * 30 * 29 / 2);
  const auto cliques = enumerate_maximal_cliques(inst.graph, 2);
  for (const auto& c : inst.truth.communities)
    EXPECT_TRUE(std::binary_search(cliques.begin(), cliques.end(), c));
}

TEST(RealizeGraph, ExpectedDegreeDensityWithinBinomialBand) {
  ModelParams p;
  p.model = ModelKind::kDenseSimilar;
  p.n = 200;
  p.k = 200;
  p.alpha = 0.6;
  p.epsilon = 0.3;
  const double pairs = 200.0 * 199 / 2;
  const double sigma = std::sqrt(0.6 * 0.4 / pairs);
  double sum = 0;
  int inside = 0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    const GeneratedInstance inst = generate(p, {}, static_cast<std::uint64_t>(seed));
    const double density = static_cast<double>(inst.graph.edge_count()) / pairs;
    sum += density;
    inside += std::abs(density - 0.6) <= 3 * sigma;
  }
  EXPECT_NEAR(sum / seeds, 0.6, 3 * sigma / std::sqrt(seeds));
  EXPECT_GE(inside, 195);  // 3-sigma band holds for 99.7% of draws
}

TEST(RealizeGraph, SparseMeanInternalDegree) {
  ModelParams p;
  p.model = ModelKind::kSparse;
  p.n = 400;
  p.k = 400;
  p.b = 12;
  const double q = 12.0 / 20.0;
  const double pairs = 400.0 * 399 / 2;
  // Mean degree is 2E/k with E ~ Binomial(pairs, q).
  const double sigma = 2.0 * std::sqrt(pairs * q * (1 - q)) / 400.0;
  const int seeds = 20;
  double sum = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    const GeneratedInstance inst = generate(p, {}, static_cast<std::uint64_t>(seed));
    sum += 2.0 * static_cast<double>(inst.graph.edge_count()) / 400.0;
  }
  EXPECT_NEAR(sum / seeds, 399 * q, 3 * sigma / std::sqrt(seeds));
}

TEST(RealizeGraph, SparseForbidsAmbientEdges) {
  ModelParams p;
  p.model = ModelKind::kSparse;
  p.n = 400;
  p.k = 144;
  p.b = 12;
  AmbientSpec a;
  a.strategy = AmbientStrategy::kUniform;
  a.q = 0.01;
  EXPECT_THROW(generate(p, a, 1), InvalidParamsError);
}

TEST(RealizeGraph, UniformAmbientNeverJoinsSharingPairs) {
  ModelParams p = clique_params(300, 50, 4, 2);
  p.gamma = 0.8;
  AmbientSpec a;
  a.strategy = AmbientStrategy::kUniform;
  a.q = 0.05;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GeneratedInstance inst = generate(p, a, seed);
    const auto member_of = inst.truth.memberships(p.n);
    EXPECT_FALSE(inst.truth.ambient_edges.empty());
    for (const Edge& e : inst.truth.ambient_edges) {
      const auto& x = member_of[e.u];
      const auto& y = member_of[e.v];
      std::vector<std::uint32_t> both;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
      EXPECT_TRUE(both.empty());
      EXPECT_TRUE(inst.graph.has_edge(e.u, e.v));
    }
  }
}

TEST(RealizeGraph, MultiSharedPairsUseTheMaximumProbability) {
  // Two heavily overlapping affinity communities: a pair inside both has
  // edge probability max(p_u p_w) over the two, never a combination.
  GroundTruth t;
  t.communities = {NodeSet{0, 1}, NodeSet{0, 1}};
  t.affinities = {{0.5, 0.5}, {1.0, 1.0}};
  ModelParams p;
  p.model = ModelKind::kAffinitySimilar;
  p.n = 2;
  p.k = 2;
  p.d = 2;
  p.alpha = 0.25;
  p.epsilon = 0.1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 2);
    GroundTruth copy = t;
    EXPECT_EQ(realize_graph(copy, p, {}, rng).edge_count(), 1u);
  }
}

TEST(Generate, SameSeedSameInstance) {
  ModelParams p = clique_params(300, 50, 4, 2);
  p.model = ModelKind::kAffinitySimilar;
  p.alpha = 0.7;
  p.epsilon = 0.3;
  p.gamma = 0.8;
  AmbientSpec a;
  a.strategy = AmbientStrategy::kUniform;
  a.q = 0.02;
  const GeneratedInstance x = generate(p, a, 17);
  const GeneratedInstance y = generate(p, a, 17);
  EXPECT_EQ(x.graph, y.graph);
  EXPECT_EQ(x.truth.communities, y.truth.communities);
  EXPECT_EQ(x.truth.affinities, y.truth.affinities);
  EXPECT_NE(generate(p, a, 18).graph, x.graph);
}

TEST(Generate, AffinitiesRespectModelFloors) {
  ModelParams p = clique_params(400, 60, 4, 1);
  p.model = ModelKind::kAffinitySimilar;
  p.alpha = 0.6;
  p.epsilon = 0.3;
  const GeneratedInstance inst = generate(p, {}, 4);
  for (const auto& a : inst.truth.affinities)
    for (double x : a) {
      EXPECT_GE(x, std::sqrt(0.6));
      EXPECT_LE(x, 1.0);
    }
  p.model = ModelKind::kAnySizeDense;
  p.m = 20;
  p.alpha_min = 0.6;
  const GeneratedInstance any = generate(p, {}, 5);
  for (std::size_t c = 0; c < 4; ++c) {
    const double floor_c = density_floor(any.truth, p, c);
    EXPECT_GE(floor_c, 0.6 - 1e-12);
    EXPECT_LE(floor_c, 1.0);
  }
}

TEST(Generate, GapStressWiresTheRequestedCount) {
  ModelParams p = clique_params(100, 40, 1);
  p.epsilon = 0.4;
  AmbientSpec a;
  a.strategy = AmbientStrategy::kGapStress;
  a.stress_count = 3;
  const GeneratedInstance inst = generate(p, a, 2);
  ASSERT_EQ(inst.truth.stress_nodes.size(), 3u);
  const NodeSet& c = inst.truth.communities[0];
  for (NodeId s : inst.truth.stress_nodes) {
    EXPECT_FALSE(c.contains(s));
    EXPECT_EQ(adjacency_fraction(inst.graph, s, c).count, 32u);  // floor(0.8 * 40)
  }
}

}  // namespace
}  // namespace commfind
