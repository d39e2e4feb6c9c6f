#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "support.hpp"

using namespace daa;
using support::ints;

namespace {

NetworkInstance single_edge() {
  CapacitatedGraph g(2, {{0, 1, Rational(2)}});
  return NetworkInstance(g, {{{0, 1}, Rational(1)}, {{0, 1}, Rational(1)}}, RoutingMode::unicast);
}

NetworkInstance random_network(std::uint64_t seed, RoutingMode mode, std::size_t firms, std::size_t vertices) {
  GenParams p;
  p.bidders = firms;
  p.vertices = vertices;
  p.mode = mode;
  return std::get<NetworkInstance>(generate_instance("network", seed, p).payload);
}

std::vector<Rational> random_values(std::uint64_t seed, std::size_t n) {
  detail::Draw d(seed + 17);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(d.between(0, 14), 2);
  return v;
}

}  // namespace

TEST(NetworkInstance, Validation) {
  EXPECT_THROW(CapacitatedGraph(2, {}), ValidationError);
  EXPECT_THROW(CapacitatedGraph(2, {{0, 1, Rational(1)}}), ValidationError);
  EXPECT_THROW(CapacitatedGraph(2, {{0, 2, Rational(2)}}), ValidationError);
  EXPECT_THROW(CapacitatedGraph(2, {{1, 1, Rational(2)}}), ValidationError);
  CapacitatedGraph g(3, {{0, 1, Rational(2)}});
  EXPECT_THROW(NetworkInstance(g, {{{0, 1}, Rational(0)}}, RoutingMode::unicast), ValidationError);
  EXPECT_THROW(NetworkInstance(g, {{{0, 1}, Rational(3, 2)}}, RoutingMode::unicast), ValidationError);
  EXPECT_THROW(NetworkInstance(g, {{{0, 1, 2}, Rational(1)}}, RoutingMode::unicast), ValidationError);
  EXPECT_THROW(NetworkInstance(g, {{{0, 0}, Rational(1)}}, RoutingMode::multicast), ValidationError);
  EXPECT_THROW(NetworkInstance(g, {{{0, 5}, Rational(1)}}, RoutingMode::unicast), ValidationError);
  EXPECT_NO_THROW(NetworkInstance(g, {{{0, 1, 2}, Rational(1)}}, RoutingMode::multicast));
}

TEST(Connector, SingleEdge) {
  auto inst = single_edge();
  DualState y(inst.graph());
  auto c = min_weight_connector(inst, y.y(), 0);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->edges, (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(c->weight, 0.5);
}

TEST(Connector, TriangleAvoidsHeavyEdge) {
  CapacitatedGraph g(3, {{0, 1, Rational(2)}, {1, 2, Rational(2)}, {0, 2, Rational(2)}});
  std::vector<double> y{1, 1, 3};
  auto c = shortest_path(g, y, 0, 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->edges, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(c->weight, 2.0);
}

TEST(Connector, DisconnectedTerminals) {
  CapacitatedGraph g(4, {{0, 1, Rational(2)}, {2, 3, Rational(2)}});
  std::vector<double> y{1, 1};
  EXPECT_FALSE(shortest_path(g, y, 0, 3));
  std::vector<std::size_t> t{0, 1, 3};
  EXPECT_FALSE(steiner_tree_2approx(g, y, t));
}

TEST(Connector, SteinerOnK4WithinTwiceOptimum) {
  std::vector<NetworkEdge> edges;
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t v = u + 1; v < 4; ++v) edges.push_back({u, v, Rational(2)});
  }
  NetworkInstance inst(CapacitatedGraph(4, edges), {{{0, 1, 2}, Rational(1)}}, RoutingMode::multicast);
  std::vector<double> y(6, 1.0);
  auto c = min_weight_connector(inst, y, 0);
  ASSERT_TRUE(c);
  auto opt = opt_connector_weight(inst, y, 0);
  ASSERT_TRUE(opt);
  EXPECT_DOUBLE_EQ(*opt, 2.0);
  EXPECT_LE(c->weight, 2.0 * *opt);
}

TEST(Connector, SteinerWithinTwiceOptimumOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto inst = random_network(seed, RoutingMode::multicast, 2, 6);
    detail::Draw d(seed);
    std::vector<double> y;
    for (std::size_t e = 0; e < inst.graph().edge_count(); ++e) y.push_back(1.0 + static_cast<double>(d.below(9)));
    for (std::size_t i = 0; i < inst.size(); ++i) {
      auto c = min_weight_connector(inst, y, i);
      auto opt = opt_connector_weight(inst, y, i);
      ASSERT_EQ(c.has_value(), opt.has_value());
      if (!c) continue;
      EXPECT_LE(c->weight, 2.0 * *opt + 1e-9) << "seed " << seed;
      EXPECT_GE(c->weight, *opt - 1e-9);
    }
  }
}

TEST(Connector, ShortestPathMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto inst = random_network(seed, RoutingMode::unicast, 3, 8);
    detail::Draw d(seed);
    std::vector<double> y;
    for (std::size_t e = 0; e < inst.graph().edge_count(); ++e) y.push_back(0.5 + static_cast<double>(d.below(7)));
    for (std::size_t i = 0; i < inst.size(); ++i) {
      std::vector<bool> seen(inst.graph().vertex_count(), false);
      std::vector<std::size_t> edges;
      std::vector<std::vector<std::size_t>> paths;
      seen[inst.firm(i).terminals[0]] = true;
      support::simple_paths(inst.graph(), inst.firm(i).terminals[0], inst.firm(i).terminals[1], seen, edges, paths);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : paths) best = std::min(best, connector_weight(p, y));
      auto c = min_weight_connector(inst, y, i);
      ASSERT_TRUE(c);
      EXPECT_NEAR(c->weight, best, 1e-9);
    }
  }
}

TEST(Dual, InitialStateAndUpdate) {
  auto inst = single_edge();
  DualState y(inst.graph());
  EXPECT_DOUBLE_EQ(y.y()[0], 0.5);
  EXPECT_DOUBLE_EQ(y.mass(), 1.0);
  EXPECT_NEAR(y.threshold(), std::numbers::e, 1e-12);
  EXPECT_FALSE(y.halted());
  y.apply(inst.graph(), *min_weight_connector(inst, y.y(), 0), Rational(1));
  EXPECT_NEAR(y.y()[0], 0.5 * std::numbers::e, 1e-9);
  EXPECT_NEAR(y.mass(), std::numbers::e, 1e-9);
  EXPECT_TRUE(y.halted());
}

TEST(Scorer, SingleEdgeScores) {
  auto inst = std::make_shared<const NetworkInstance>(single_edge());
  NetworkScorer s(inst);
  EXPECT_DOUBLE_EQ(s.score(0, Rational(5)).value(), 10.0);
  EXPECT_DOUBLE_EQ(s.score(1, Rational(3)).value(), 6.0);
  EXPECT_TRUE(s.score(0, Rational(0)).is_zero());
  s.reject(0, Rational(5));
  EXPECT_TRUE(s.score(1, Rational(3)).is_zero());
  EXPECT_TRUE(s.score(1, Rational(100)).is_zero());
}

TEST(Greedy, SingleEdgeTrace) {
  auto inst = single_edge();
  auto sol = greedy_routing(inst, ints({5, 3}));
  ASSERT_EQ(sol.routed.size(), 1u);
  EXPECT_EQ(sol.routed[0].firm, 0u);
  EXPECT_DOUBLE_EQ(sol.routed[0].score, 10.0);
  EXPECT_DOUBLE_EQ(sol.initial_mass, 1.0);
  EXPECT_NEAR(sol.routed[0].mass_after, std::numbers::e, 1e-9);
  EXPECT_NEAR(sol.dual.y()[0], 1.3591409142295225, 1e-9);
  auto load = check_capacity_feasibility(inst, sol.routed);
  EXPECT_TRUE(load.feasible());
  EXPECT_EQ(load.load[0], Rational(1));
  EXPECT_EQ(opt_routing(inst, ints({5, 3})).welfare, Rational(8));
  EXPECT_EQ(support::ref_unicast_routing(inst, ints({5, 3})), Rational(8));
}

TEST(Greedy, EngineRetainsGreedySet) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto mode = seed % 2 ? RoutingMode::multicast : RoutingMode::unicast;
    auto inst = std::make_shared<const NetworkInstance>(random_network(seed, mode, 5, 6));
    auto v = random_values(seed, inst->size());
    auto sol = greedy_routing(*inst, v);
    NetworkScorer s(inst);
    auto out = run_da_auction_in_place(s, v, Orientation::procurement);
    EXPECT_EQ(out.retained(), sol.retained()) << "seed " << seed;
    ASSERT_EQ(s.routed().size(), sol.routed.size());
    for (std::size_t j = 0; j < sol.routed.size(); ++j) {
      EXPECT_EQ(s.routed()[j].connector.edges, sol.routed[j].connector.edges);
      EXPECT_EQ(s.routed()[j].mass_after, sol.routed[j].mass_after);
    }
  }
}

TEST(Greedy, ThreeNodePathHalfDemands) {
  CapacitatedGraph g(3, {{0, 1, Rational(2)}, {1, 2, Rational(2)}});
  NetworkInstance inst(g, {{{0, 2}, Rational(1, 2)}, {{0, 2}, Rational(1, 2)}}, RoutingMode::unicast);
  auto v = ints({4, 3});
  auto sol = greedy_routing(inst, v);
  EXPECT_TRUE(check_capacity_feasibility(inst, sol.routed).feasible());
  Rational got(0);
  for (auto i : sol.retained()) got += v[i];
  auto opt = opt_routing(inst, v).welfare;
  EXPECT_EQ(opt, Rational(7));
  EXPECT_GE(to_double(got), routing_ratio_bound(inst) * to_double(opt));
}

TEST(Greedy, NoFirmsAndDisconnectedFirms) {
  CapacitatedGraph g(4, {{0, 1, Rational(2)}, {2, 3, Rational(2)}});
  NetworkInstance empty(g, {}, RoutingMode::unicast);
  auto sol = greedy_routing(empty, std::vector<Rational>{});
  EXPECT_TRUE(sol.routed.empty());
  NetworkInstance split(g, {{{0, 3}, Rational(1)}, {{0, 1}, Rational(1)}}, RoutingMode::unicast);
  auto s2 = greedy_routing(split, ints({9, 1}));
  EXPECT_EQ(s2.infeasible, (std::vector<std::size_t>{0}));
  EXPECT_EQ(s2.retained(), (std::vector<std::size_t>{1}));
}

TEST(Greedy, DualsNeverDecreaseAndMassGrows) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_network(seed, RoutingMode::unicast, 5, 6);
    auto sol = greedy_routing(inst, random_values(seed, inst.size()));
    double prev = sol.initial_mass;
    for (const auto& r : sol.routed) {
      EXPECT_GT(r.mass_after, prev);
      prev = r.mass_after;
    }
    DualState init(inst.graph());
    for (std::size_t e = 0; e < inst.graph().edge_count(); ++e) EXPECT_GE(sol.dual.y()[e], init.y()[e]);
  }
}

TEST(Certificate, ZeroDualsGiveTotalValue) {
  auto inst = single_edge();
  std::vector<double> y{0.0};
  EXPECT_DOUBLE_EQ(dual_certificate(inst, y, ints({5, 3})).bound, 8.0);
  std::vector<double> neg{-1.0};
  EXPECT_THROW(dual_certificate(inst, neg, ints({5, 3})), ValidationError);
}

TEST(Certificate, DominatesOptimum) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto mode = seed % 2 ? RoutingMode::multicast : RoutingMode::unicast;
    auto inst = random_network(seed, mode, 4, 5);
    auto v = random_values(seed, inst.size());
    auto sol = greedy_routing(inst, v);
    auto cert = dual_certificate(inst, sol.dual.y(), v);
    EXPECT_GE(cert.bound, to_double(opt_routing(inst, v).welfare) * (1 - 1e-12)) << "seed " << seed;
  }
}

TEST(Bound, Formula) {
  auto inst = single_edge();
  EXPECT_NEAR(routing_ratio_bound(inst), 1.0 / (std::numbers::e * 2.0), 1e-15);
  EXPECT_EQ(connector_gamma(RoutingMode::multicast), 2.0);
}

TEST(Oracle, UnicastRoutingMatchesReference) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = random_network(seed, RoutingMode::unicast, 4, 5);
    auto v = random_values(seed, inst.size());
    EXPECT_EQ(opt_routing(inst, v).welfare, support::ref_unicast_routing(inst, v)) << "seed " << seed;
  }
}
