#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daa/errors.hpp"
#include "daa/graph.hpp"
#include "daa/network.hpp"
#include "daa/rational.hpp"
#include "daa/setcover.hpp"

namespace daa {

struct OracleBudget {
  std::uint64_t max_states = 50'000'000;
  double timeout_seconds = 120.0;
};

/// Counts enumerated states and throws BudgetExceeded past the budget.
class BudgetMeter {
 public:
  explicit BudgetMeter(OracleBudget budget, std::string what)
      : budget_(budget), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {
    if (budget_.max_states == 0 || budget_.timeout_seconds <= 0) {
      throw ValidationError("oracle budget must be positive");
    }
  }

  void tick(std::uint64_t n = 1) {
    states_ += n;
    if (states_ > budget_.max_states) {
      throw BudgetExceeded(what_ + ": more than " + std::to_string(budget_.max_states) + " states");
    }
    if ((states_ & 0x3ff) == 0) {
      std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
      if (spent.count() > budget_.timeout_seconds) {
        throw BudgetExceeded(what_ + ": exceeded " + std::to_string(budget_.timeout_seconds) + " s");
      }
    }
  }

  std::uint64_t states() const { return states_; }

 private:
  OracleBudget budget_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t states_ = 0;
};

enum class SearchStrategy { subset_enumeration, branch_and_bound };

struct Optimum {
  std::vector<std::size_t> members;  // ascending
  Rational value{0};
};

namespace detail {

inline std::vector<std::size_t> mask_members(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

inline void require_small(std::size_t n, std::size_t limit, const std::string& what) {
  if (n > limit) {
    throw BudgetExceeded(what + ": size " + std::to_string(n) + " exceeds enumeration limit " +
                         std::to_string(limit));
  }
}

// Backtracking k-coloring of the given vertices, with colors introduced in order.
inline bool colorable(const Graph& g, std::span<const std::size_t> vertices, std::size_t k,
                      BudgetMeter* meter) {
  std::vector<std::size_t> color(g.size(), k);
  auto rec = [&](auto&& self, std::size_t idx, std::size_t used) -> bool {
    if (meter) meter->tick();
    if (idx == vertices.size()) return true;
    std::size_t v = vertices[idx];
    for (std::size_t c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      for (std::size_t u : g.neighbors(v)) {
        if (color[u] == c) { ok = false; break; }
      }
      if (!ok) continue;
      color[v] = c;
      if (self(self, idx + 1, std::max(used, c + 1))) return true;
      color[v] = k;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

}  // namespace detail

inline bool is_k_colorable(const Graph& g, std::span<const std::size_t> vertices, std::size_t k) {
  return detail::colorable(g, vertices, k, nullptr);
}

/// Exact maximum-weight k-colorable induced subgraph.
inline Optimum opt_k_colorable(const Graph& g, std::size_t k, std::span<const Rational> weights,
                               OracleBudget budget = {},
                               SearchStrategy strategy = SearchStrategy::subset_enumeration) {
  const std::size_t n = g.size();
  if (weights.size() != n) throw ValidationError("weight vector has wrong length");
  if (k == 0) throw ValidationError("channel count must be at least 1");
  detail::require_small(n, 24, "max-weight k-colorable subgraph");
  BudgetMeter meter(budget, "max-weight k-colorable subgraph");
  Optimum best;

  if (strategy == SearchStrategy::subset_enumeration) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      meter.tick();
      auto members = detail::mask_members(mask);
      Rational w(0);
      for (std::size_t v : members) w += weights[v];
      if (w > best.value && detail::colorable(g, members, k, &meter)) best = {members, w};
    }
    return best;
  }

  // Branch and bound: each vertex gets a color or is dropped.
  std::vector<Rational> suffix(n + 1, Rational(0));
  for (std::size_t v = n; v-- > 0;) suffix[v] = suffix[v + 1] + weights[v];
  std::vector<std::size_t> color(n, k);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t v, std::size_t used, Rational w) -> void {
    meter.tick();
    if (w > best.value) best = {chosen, w};
    if (v == n || w + suffix[v] <= best.value) return;
    for (std::size_t c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = std::none_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                             [&](std::size_t u) { return color[u] == c; });
      if (!ok) continue;
      color[v] = c;
      chosen.push_back(v);
      self(self, v + 1, std::max(used, c + 1), w + weights[v]);
      chosen.pop_back();
      color[v] = k;
    }
    self(self, v + 1, used, w);
  };
  rec(rec, 0, 0, Rational(0));
  return best;
}

/// Exact maximum-weight independent set.
inline Optimum opt_mwis(const Graph& g, std::span<const Rational> weights, OracleBudget budget = {},
                        SearchStrategy strategy = SearchStrategy::subset_enumeration) {
  const std::size_t n = g.size();
  if (weights.size() != n) throw ValidationError("weight vector has wrong length");
  detail::require_small(n, 30, "max-weight independent set");
  BudgetMeter meter(budget, "max-weight independent set");
  std::vector<std::uint64_t> nbr(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u : g.neighbors(v)) nbr[v] |= std::uint64_t{1} << u;
  }
  Optimum best;

  if (strategy == SearchStrategy::subset_enumeration) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      meter.tick();
      bool independent = true;
      Rational w(0);
      for (std::size_t v = 0; v < n && independent; ++v) {
        if (!(mask >> v & 1)) continue;
        if (nbr[v] & mask) independent = false;
        w += weights[v];
      }
      if (independent && w > best.value) best = {detail::mask_members(mask), w};
    }
    return best;
  }

  std::vector<Rational> suffix(n + 1, Rational(0));
  for (std::size_t v = n; v-- > 0;) suffix[v] = suffix[v + 1] + weights[v];
  auto rec = [&](auto&& self, std::size_t v, std::uint64_t taken, std::uint64_t blocked, Rational w) -> void {
    meter.tick();
    if (w > best.value) best = {detail::mask_members(taken), w};
    if (v == n || w + suffix[v] <= best.value) return;
    if (!(blocked >> v & 1)) {
      self(self, v + 1, taken | std::uint64_t{1} << v, blocked | nbr[v], w + weights[v]);
    }
    self(self, v + 1, taken, blocked, w);
  };
  rec(rec, 0, 0, 0, Rational(0));
  return best;
}

/// Exact minimum-cost cover.
inline Optimum opt_setcover(const SetCoverInstance& instance, std::span<const Rational> costs,
                            OracleBudget budget = {},
                            SearchStrategy strategy = SearchStrategy::subset_enumeration) {
  check_costs(instance, costs);
  const std::size_t n = instance.size();
  detail::require_small(n, 30, "minimum set cover");
  detail::require_small(instance.universe(), 64, "minimum set cover universe");
  BudgetMeter meter(budget, "minimum set cover");
  const std::uint64_t full =
      instance.universe() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << instance.universe()) - 1;
  std::vector<std::uint64_t> elems(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e : instance.set(i)) elems[i] |= std::uint64_t{1} << e;
  }
  std::optional<Optimum> best;

  if (strategy == SearchStrategy::subset_enumeration) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      meter.tick();
      std::uint64_t hit = 0;
      Rational cost(0);
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) hit |= elems[i], cost += costs[i];
      }
      if (hit == full && (!best || cost < best->value)) best = Optimum{detail::mask_members(mask), cost};
    }
    return *best;
  }

  // Branch on the sets containing the lowest uncovered element.
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::uint64_t hit, Rational cost) -> void {
    meter.tick();
    if (best && cost >= best->value) return;
    if (hit == full) {
      auto members = chosen;
      std::sort(members.begin(), members.end());
      best = Optimum{members, cost};
      return;
    }
    std::size_t e = 0;
    while (hit >> e & 1) ++e;
    for (std::size_t i : instance.containing(e)) {
      chosen.push_back(i);
      self(self, hit | elems[i], cost + costs[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, Rational(0));
  return *best;
}

/// All simple s-t paths (unicast) or all edge-minimal trees spanning the
/// terminals (multicast), each as ascending edge ids.
inline std::vector<std::vector<std::size_t>> enumerate_connectors(const NetworkInstance& instance,
                                                                  std::size_t firm, BudgetMeter& meter) {
  const auto& g = instance.graph();
  const auto& terminals = instance.firm(firm).terminals;
  std::vector<std::vector<std::size_t>> out;

  if (instance.mode() == RoutingMode::unicast) {
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<std::size_t> edges;
    const std::size_t target = terminals[1];
    auto rec = [&](auto&& self, std::size_t u) -> void {
      meter.tick();
      if (u == target) {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        return;
      }
      for (auto [v, e] : g.incident(u)) {
        if (on_path[v]) continue;
        on_path[v] = true;
        edges.push_back(e);
        self(self, v);
        edges.pop_back();
        on_path[v] = false;
      }
    };
    on_path[terminals[0]] = true;
    rec(rec, terminals[0]);
    return out;
  }

  const std::size_t m = g.edge_count();
  detail::require_small(m, 24, "Steiner tree enumeration");
  std::vector<bool> is_terminal(g.vertex_count(), false);
  for (std::size_t t : terminals) is_terminal[t] = true;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    meter.tick();
    auto edges = detail::mask_members(mask);
    std::vector<std::size_t> degree(g.vertex_count(), 0);
    detail::DisjointSets dsu(g.vertex_count());
    bool acyclic = true;
    for (std::size_t e : edges) {
      ++degree[g.edge(e).u], ++degree[g.edge(e).v];
      if (!dsu.unite(g.edge(e).u, g.edge(e).v)) { acyclic = false; break; }
    }
    if (!acyclic) continue;
    bool ok = true;
    for (std::size_t v = 0; v < g.vertex_count() && ok; ++v) {
      if (degree[v] == 1 && !is_terminal[v]) ok = false;
    }
    for (std::size_t t : terminals) {
      if (!ok) break;
      if (degree[t] == 0 || dsu.find(t) != dsu.find(terminals[0])) ok = false;
    }
    // Acyclic with all used vertices in the terminals' component makes it one tree.
    for (std::size_t v = 0; v < g.vertex_count() && ok; ++v) {
      if (degree[v] > 0 && dsu.find(v) != dsu.find(terminals[0])) ok = false;
    }
    if (ok) out.push_back(std::move(edges));
  }
  return out;
}

/// Exact minimum Steiner tree weight under edge weights y (nullopt if the
/// terminals are disconnected).
inline std::optional<double> opt_connector_weight(const NetworkInstance& instance, std::span<const double> y,
                                                  std::size_t firm, OracleBudget budget = {}) {
  BudgetMeter meter(budget, "connector enumeration");
  std::optional<double> best;
  for (const auto& c : enumerate_connectors(instance, firm, meter)) {
    double w = connector_weight(c, y);
    if (!best || w < *best) best = w;
  }
  return best;
}

struct RoutingOptimum {
  std::vector<std::size_t> firms;                     // ascending
  std::vector<std::vector<std::size_t>> structures;   // one per firm in `firms`
  Rational welfare{0};
};

/// Loads of a joint assignment stay within capacity.
inline bool routing_feasible(const NetworkInstance& instance, std::span<const std::size_t> firms,
                             std::span<const std::vector<std::size_t>> structures) {
  std::vector<Rational> load(instance.graph().edge_count(), Rational(0));
  for (std::size_t j = 0; j < firms.size(); ++j) {
    for (std::size_t e : structures[j]) load.at(e) += instance.firm(firms[j]).demand;
  }
  for (std::size_t e = 0; e < load.size(); ++e) {
    if (load[e] > instance.graph().edge(e).capacity) return false;
  }
  return true;
}

/// Exact max-welfare set of firms routable with unsplittable paths/trees.
inline RoutingOptimum opt_routing(const NetworkInstance& instance, std::span<const Rational> values,
                                  OracleBudget budget = {},
                                  SearchStrategy strategy = SearchStrategy::subset_enumeration) {
  check_values(instance, values);
  const std::size_t n = instance.size();
  detail::require_small(n, 16, "optimal routing");
  BudgetMeter meter(budget, "optimal routing");
  std::vector<std::vector<std::vector<std::size_t>>> options(n);
  for (std::size_t i = 0; i < n; ++i) options[i] = enumerate_connectors(instance, i, meter);
  const auto& g = instance.graph();

  std::vector<Rational> load(g.edge_count(), Rational(0));
  auto fits = [&](std::size_t firm, const std::vector<std::size_t>& s) {
    for (std::size_t e : s) {
      if (load[e] + instance.firm(firm).demand > g.edge(e).capacity) return false;
    }
    return true;
  };
  auto place = [&](std::size_t firm, const std::vector<std::size_t>& s, int sign) {
    for (std::size_t e : s) load[e] += sign * instance.firm(firm).demand;
  };

  RoutingOptimum best;
  if (strategy == SearchStrategy::subset_enumeration) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      meter.tick();
      auto firms = detail::mask_members(mask);
      Rational w(0);
      for (std::size_t i : firms) w += values[i];
      if (w <= best.welfare) continue;
      std::vector<std::vector<std::size_t>> picked;
      auto assign = [&](auto&& self, std::size_t j) -> bool {
        meter.tick();
        if (j == firms.size()) return true;
        for (const auto& s : options[firms[j]]) {
          if (!fits(firms[j], s)) continue;
          place(firms[j], s, 1);
          picked.push_back(s);
          if (self(self, j + 1)) {
            place(firms[j], s, -1);
            return true;
          }
          picked.pop_back();
          place(firms[j], s, -1);
        }
        return false;
      };
      if (assign(assign, 0)) best = {firms, picked, w};
    }
    return best;
  }

  std::vector<Rational> suffix(n + 1, Rational(0));
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + values[i];
  std::vector<std::size_t> firms;
  std::vector<std::vector<std::size_t>> picked;
  auto rec = [&](auto&& self, std::size_t i, Rational w) -> void {
    meter.tick();
    if (w > best.welfare) best = {firms, picked, w};
    if (i == n || w + suffix[i] <= best.welfare) return;
    if (values[i] > 0) {
      for (const auto& s : options[i]) {
        if (!fits(i, s)) continue;
        place(i, s, 1);
        firms.push_back(i);
        picked.push_back(s);
        self(self, i + 1, w + values[i]);
        picked.pop_back();
        firms.pop_back();
        place(i, s, -1);
      }
    }
    self(self, i + 1, w);
  };
  rec(rec, 0, Rational(0));
  return best;
}

}  // namespace daa
