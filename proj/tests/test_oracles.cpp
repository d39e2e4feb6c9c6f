#include <gtest/gtest.h>

#include "support.hpp"

using namespace daa;
using support::ints;

namespace {

constexpr auto kBnb = SearchStrategy::branch_and_bound;

Graph random_graph(std::uint64_t seed, std::size_t n) {
  detail::Draw d(seed);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (d.below(3) == 0) g.add_edge(u, v);
    }
  }
  return g;
}

std::vector<Rational> random_weights(std::uint64_t seed, std::size_t n) {
  detail::Draw d(seed + 99);
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace_back(d.between(0, 10), d.between(1, 3));
  return w;
}

Rational weight_of(const std::vector<std::size_t>& s, const std::vector<Rational>& w) {
  Rational t(0);
  for (auto v : s) t += w[v];
  return t;
}

}  // namespace

TEST(KColorable, SmallCases) {
  EXPECT_EQ(opt_k_colorable(Graph(4), 1, ints({1, 2, 3, 4})).value, Rational(10));
  EXPECT_EQ(opt_k_colorable(support::path_graph(3), 1, ints({3, 5, 2})).value, Rational(5));
  Graph tri(3);
  tri.add_edge(0, 1), tri.add_edge(1, 2), tri.add_edge(0, 2);
  auto r = opt_k_colorable(tri, 2, ints({4, 3, 2}));
  EXPECT_EQ(r.value, Rational(7));
  EXPECT_EQ(r.members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(opt_k_colorable(tri, 2, ints({4, 3, 2}), {}, kBnb).value, Rational(7));
  EXPECT_TRUE(is_k_colorable(tri, std::vector<std::size_t>{0, 1, 2}, 3));
  EXPECT_FALSE(is_k_colorable(tri, std::vector<std::size_t>{0, 1, 2}, 2));
}

TEST(KColorable, StrategiesAgreeWithReference) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_graph(seed, 8);
    auto w = random_weights(seed, 8);
    const std::size_t k = 1 + seed % 3;
    auto a = opt_k_colorable(g, k, w);
    auto b = opt_k_colorable(g, k, w, {}, kBnb);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.value, support::ref_k_colorable(g, k, w)) << "seed " << seed;
    EXPECT_TRUE(is_k_colorable(g, a.members, k));
    EXPECT_TRUE(is_k_colorable(g, b.members, k));
    EXPECT_EQ(weight_of(a.members, w), a.value);
    EXPECT_EQ(weight_of(b.members, w), b.value);
  }
}

TEST(Mwis, SmallCases) {
  EXPECT_EQ(opt_mwis(Graph(3), ints({1, 2, 3})).value, Rational(6));
  Graph star(4);
  for (std::size_t v = 1; v < 4; ++v) star.add_edge(0, v);
  EXPECT_EQ(opt_mwis(star, ints({10, 4, 4, 4})).value, Rational(12));
  EXPECT_EQ(opt_mwis(star, ints({10, 4, 4, 4}), {}, kBnb).value, Rational(12));
}

TEST(Mwis, StrategiesAgreeWithReference) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_graph(seed, 10);
    auto w = random_weights(seed, 10);
    auto a = opt_mwis(g, w);
    auto b = opt_mwis(g, w, {}, kBnb);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.value, support::ref_mwis(g, w));
    EXPECT_TRUE(g.is_independent(a.members));
    EXPECT_TRUE(g.is_independent(b.members));
  }
}

TEST(SetCover, SmallCases) {
  SetCoverInstance forced(2, {{0}, {1}});
  EXPECT_EQ(opt_setcover(forced, ints({2, 3})).value, Rational(5));
  SetCoverInstance ex(2, {{0}, {1}, {0, 1}});
  std::vector<Rational> c{Rational(1), Rational(1), Rational(3, 2)};
  EXPECT_EQ(opt_setcover(ex, c).value, Rational(3, 2));
  EXPECT_EQ(opt_setcover(ex, c, {}, kBnb).value, Rational(3, 2));
  EXPECT_EQ(opt_setcover(ex, c).members, (std::vector<std::size_t>{2}));
}

TEST(SetCover, StrategiesAgreeWithReference) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = std::get<SetCoverInstance>(
        generate_instance("setcover", seed, GenParams{.bidders = 9, .elements = 7}).payload);
    auto c = random_weights(seed, inst.size());
    auto a = opt_setcover(inst, c);
    auto b = opt_setcover(inst, c, {}, kBnb);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.value, support::ref_min_cover(inst, c));
    EXPECT_TRUE(inst.is_cover(a.members));
    EXPECT_TRUE(inst.is_cover(b.members));
  }
}

TEST(Routing, StrategiesAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenParams p;
    p.bidders = 4;
    p.vertices = 5;
    p.mode = seed % 2 ? RoutingMode::multicast : RoutingMode::unicast;
    auto inst = std::get<NetworkInstance>(generate_instance("network", seed, p).payload);
    auto v = random_weights(seed, inst.size());
    auto a = opt_routing(inst, v);
    auto b = opt_routing(inst, v, {}, kBnb);
    EXPECT_EQ(a.welfare, b.welfare) << "seed " << seed;
    EXPECT_TRUE(routing_feasible(inst, a.firms, a.structures));
    EXPECT_TRUE(routing_feasible(inst, b.firms, b.structures));
    EXPECT_EQ(weight_of(a.firms, v), a.welfare);
  }
}

TEST(Routing, NoFirms) {
  NetworkInstance inst(CapacitatedGraph(2, {{0, 1, Rational(2)}}), {}, RoutingMode::unicast);
  EXPECT_EQ(opt_routing(inst, std::vector<Rational>{}).welfare, Rational(0));
}

TEST(Budget, RefusalsAreLoud) {
  auto g = random_graph(1, 12);
  auto w = random_weights(1, 12);
  OracleBudget tiny{100, 60.0};
  EXPECT_THROW(opt_k_colorable(g, 2, w, tiny), BudgetExceeded);
  EXPECT_THROW(opt_mwis(g, w, tiny), BudgetExceeded);
  EXPECT_THROW(opt_k_colorable(Graph(30), 1, std::vector<Rational>(30, Rational(1))), BudgetExceeded);
  EXPECT_THROW(opt_mwis(g, w, OracleBudget{0, 1.0}), ValidationError);
  BudgetMeter m(OracleBudget{3, 10.0}, "test");
  m.tick(3);
  EXPECT_THROW(m.tick(), BudgetExceeded);
}
