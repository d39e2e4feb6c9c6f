#pragma once

// Plain-recursion reference optima and scans for the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "daa/daa.hpp"

namespace support {

using daa::Rational;

inline std::vector<Rational> ints(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<Rational> range_levels(std::int64_t lo, std::int64_t hi, std::int64_t den = 1) {
  std::vector<Rational> out;
  for (std::int64_t i = lo; i <= hi; ++i) out.emplace_back(i, den);
  return out;
}

inline daa::Graph path_graph(std::size_t n) {
  daa::Graph g(n);
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

// Assign each vertex "dropped" or one of k colors, keep the best proper one.
inline Rational ref_k_colorable(const daa::Graph& g, std::size_t k, const std::vector<Rational>& w) {
  const std::size_t n = g.size();
  std::vector<int> color(n, -1);
  Rational best(0);
  std::function<void(std::size_t, Rational)> go = [&](std::size_t v, Rational acc) {
    if (v == n) {
      best = std::max(best, acc);
      return;
    }
    color[v] = -1;
    go(v + 1, acc);
    for (std::size_t c = 0; c < k; ++c) {
      bool clash = false;
      for (std::size_t u = 0; u < v; ++u) clash = clash || (color[u] == static_cast<int>(c) && g.adjacent(u, v));
      if (clash) continue;
      color[v] = static_cast<int>(c);
      go(v + 1, acc + w[v]);
    }
    color[v] = -1;
  };
  go(0, Rational(0));
  return best;
}

inline Rational ref_mwis(const daa::Graph& g, const std::vector<Rational>& w) {
  return ref_k_colorable(g, 1, w);
}

inline Rational ref_min_cover(const daa::SetCoverInstance& inst, const std::vector<Rational>& c) {
  std::optional<Rational> best;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, Rational)> go = [&](std::size_t i, Rational acc) {
    if (i == inst.size()) {
      if (inst.is_cover(pick) && (!best || acc < *best)) best = acc;
      return;
    }
    go(i + 1, acc);
    pick.push_back(i);
    go(i + 1, acc + c[i]);
    pick.pop_back();
  };
  go(0, Rational(0));
  return *best;
}

// Every simple path between two vertices as a list of edge ids.
inline void simple_paths(const daa::CapacitatedGraph& g, std::size_t at, std::size_t target,
                         std::vector<bool>& seen, std::vector<std::size_t>& edges,
                         std::vector<std::vector<std::size_t>>& out) {
  if (at == target) {
    out.push_back(edges);
    return;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    std::size_t next;
    if (ed.u == at) next = ed.v;
    else if (ed.v == at) next = ed.u;
    else continue;
    if (seen[next]) continue;
    seen[next] = true;
    edges.push_back(e);
    simple_paths(g, next, target, seen, edges, out);
    edges.pop_back();
    seen[next] = false;
  }
}

// Unicast routing optimum: every firm either stays out or takes one of its
// simple paths; loads must respect capacities.
inline Rational ref_unicast_routing(const daa::NetworkInstance& inst, const std::vector<Rational>& values) {
  const auto& g = inst.graph();
  std::vector<std::vector<std::vector<std::size_t>>> paths(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<std::size_t> edges;
    seen[inst.firm(i).terminals[0]] = true;
    simple_paths(g, inst.firm(i).terminals[0], inst.firm(i).terminals[1], seen, edges, paths[i]);
  }
  std::vector<Rational> load(g.edge_count(), Rational(0));
  Rational best(0);
  std::function<void(std::size_t, Rational)> go = [&](std::size_t i, Rational acc) {
    if (i == inst.size()) {
      best = std::max(best, acc);
      return;
    }
    go(i + 1, acc);
    const Rational d = inst.firm(i).demand;
    for (const auto& p : paths[i]) {
      bool ok = std::all_of(p.begin(), p.end(), [&](std::size_t e) { return load[e] + d <= g.edge(e).capacity; });
      if (!ok) continue;
      for (std::size_t e : p) load[e] += d;
      go(i + 1, acc + values[i]);
      for (std::size_t e : p) load[e] -= d;
    }
  };
  go(0, Rational(0));
  return best;
}

// Full scan of B_i: which levels make `bidder` a winner.
template <class S>
std::vector<bool> ref_winning_levels(const S& scorer, const daa::BidSpace& space, std::vector<Rational> bids,
                                     std::size_t bidder, daa::Orientation o) {
  std::vector<bool> out;
  for (const auto& level : space.levels(bidder)) {
    bids[bidder] = level;
    out.push_back(daa::run_da_auction(scorer, bids, o).allocated(bidder));
  }
  return out;
}

inline double greedy_factor(double alpha) { return 1.0 - std::exp(-1.0 / alpha); }

}  // namespace support
