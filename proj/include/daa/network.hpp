#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "daa/auction.hpp"
#include "daa/errors.hpp"
#include "daa/rational.hpp"

namespace daa {

struct NetworkEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational capacity{1};
  friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

/// Undirected multigraph with edge capacities; requires C = min c(e) > 1.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;
  CapacitatedGraph(std::size_t vertices, std::vector<NetworkEdge> edges)
      : vertices_(vertices), edges_(std::move(edges)), incident_(vertices) {
    if (edges_.empty()) throw ValidationError("network has no edges");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& edge = edges_[e];
      const std::string who = "edge " + std::to_string(e);
      if (edge.u >= vertices_ || edge.v >= vertices_) throw ValidationError(who + " endpoint out of range");
      if (edge.u == edge.v) throw ValidationError(who + " is a self loop");
      if (edge.capacity <= 1) {
        throw ValidationError(who + " capacity " + to_string(edge.capacity) +
                              " must exceed 1 (minimum capacity C > 1)");
      }
      incident_[edge.u].emplace_back(edge.v, e);
      incident_[edge.v].emplace_back(edge.u, e);
    }
  }

  std::size_t vertex_count() const { return vertices_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<NetworkEdge>& edges() const { return edges_; }
  const NetworkEdge& edge(std::size_t e) const { return edges_.at(e); }
  // (neighbor, edge id) pairs in insertion order
  const std::vector<std::pair<std::size_t, std::size_t>>& incident(std::size_t v) const {
    return incident_.at(v);
  }

  Rational min_capacity() const {
    Rational c = edges_.front().capacity;
    for (const auto& e : edges_) c = std::min(c, e.capacity);
    return c;
  }

  friend bool operator==(const CapacitatedGraph& a, const CapacitatedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertices_ = 0;
  std::vector<NetworkEdge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident_;
};

enum class RoutingMode { unicast, multicast };

inline const char* to_string(RoutingMode m) { return m == RoutingMode::unicast ? "unicast" : "multicast"; }

/// terminals[0] is the source; unicast firms have exactly two terminals.
struct Firm {
  std::vector<std::size_t> terminals;
  Rational demand{1};
  friend bool operator==(const Firm&, const Firm&) = default;
};

class NetworkInstance {
 public:
  NetworkInstance(CapacitatedGraph graph, std::vector<Firm> firms, RoutingMode mode)
      : graph_(std::move(graph)), firms_(std::move(firms)), mode_(mode) {
    for (std::size_t i = 0; i < firms_.size(); ++i) {
      const auto& f = firms_[i];
      const std::string who = "firm " + std::to_string(i);
      if (f.demand <= 0 || f.demand > 1) {
        throw ValidationError(who + " demand " + to_string(f.demand) + " must lie in (0, 1]");
      }
      if (mode_ == RoutingMode::unicast && f.terminals.size() != 2) {
        throw ValidationError(who + " needs exactly two terminals for unicast");
      }
      if (f.terminals.size() < 2) throw ValidationError(who + " needs at least two terminals");
      auto sorted = f.terminals;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError(who + " has repeated terminals");
      }
      if (sorted.back() >= graph_.vertex_count()) throw ValidationError(who + " terminal out of range");
    }
  }

  const CapacitatedGraph& graph() const { return graph_; }
  const std::vector<Firm>& firms() const { return firms_; }
  const Firm& firm(std::size_t i) const { return firms_.at(i); }
  std::size_t size() const { return firms_.size(); }
  RoutingMode mode() const { return mode_; }

  friend bool operator==(const NetworkInstance&, const NetworkInstance&) = default;

 private:
  CapacitatedGraph graph_;
  std::vector<Firm> firms_;
  RoutingMode mode_;
};

/// Path or tree, as ascending edge ids, with its weight under the duals.
struct Connector {
  std::vector<std::size_t> edges;
  double weight = 0.0;
};

inline double connector_weight(std::span<const std::size_t> edges, std::span<const double> y) {
  double w = 0.0;
  for (std::size_t e : edges) w += y[e];
  return w;
}

/// Edge duals y(e) with the running mass Σ c(e) y(e).
class DualState {
 public:
  DualState() = default;
  explicit DualState(const CapacitatedGraph& graph)
      : base_(std::exp(to_double(graph.min_capacity()) - 1.0) * static_cast<double>(graph.edge_count())) {
    y_.reserve(graph.edge_count());
    for (const auto& e : graph.edges()) y_.push_back(1.0 / to_double(e.capacity));
    recompute_mass(graph);
  }

  std::span<const double> y() const { return y_; }
  double mass() const { return mass_; }
  // ē^{C-1} m; the greedy stops once the mass reaches it.
  double threshold() const { return base_; }
  bool halted() const { return mass_ >= base_; }

  /// y(e) <- y(e) * (ē^{C-1} m)^{d / (c(e) - 1)} on every edge of the connector.
  void apply(const CapacitatedGraph& graph, const Connector& chosen, const Rational& demand) {
    const double d = to_double(demand);
    for (std::size_t e : chosen.edges) {
      y_[e] *= std::pow(base_, d / (to_double(graph.edge(e).capacity) - 1.0));
    }
    recompute_mass(graph);
  }

 private:
  void recompute_mass(const CapacitatedGraph& graph) {
    mass_ = 0.0;
    for (std::size_t e = 0; e < y_.size(); ++e) mass_ += to_double(graph.edge(e).capacity) * y_[e];
  }

  double base_ = 0.0;
  double mass_ = 0.0;
  std::vector<double> y_;
};

namespace detail {

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<std::optional<std::size_t>> pred_edge;
};

inline ShortestPathTree dijkstra(const CapacitatedGraph& g, std::span<const double> y, std::size_t source) {
  const double inf = std::numeric_limits<double>::infinity();
  ShortestPathTree t{std::vector<double>(g.vertex_count(), inf),
                     std::vector<std::optional<std::size_t>>(g.vertex_count())};
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  t.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > t.dist[u]) continue;
    for (auto [v, e] : g.incident(u)) {
      double nd = d + y[e];
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.pred_edge[v] = e;
        heap.emplace(nd, v);
      }
    }
  }
  return t;
}

inline std::vector<std::size_t> trace_path(const CapacitatedGraph& g, const ShortestPathTree& t,
                                           std::size_t target) {
  std::vector<std::size_t> edges;
  std::size_t v = target;
  while (t.pred_edge[v]) {
    std::size_t e = *t.pred_edge[v];
    edges.push_back(e);
    v = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
  }
  return edges;
}

inline Connector make_connector(std::vector<std::size_t> edges, std::span<const double> y) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  double w = connector_weight(edges, y);
  return Connector{std::move(edges), w};
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

/// Exact minimum-weight s-t path under the duals (Dijkstra).
inline std::optional<Connector> shortest_path(const CapacitatedGraph& g, std::span<const double> y,
                                              std::size_t s, std::size_t t) {
  auto tree = detail::dijkstra(g, y, s);
  if (std::isinf(tree.dist[t])) return std::nullopt;
  return detail::make_connector(detail::trace_path(g, tree, t), y);
}

/// Metric-closure spanning-tree Steiner heuristic, within a factor 2 of the
/// optimum tree: MST over terminal-to-terminal shortest paths, expanded,
/// re-spanned and stripped of non-terminal leaves.
inline std::optional<Connector> steiner_tree_2approx(const CapacitatedGraph& g, std::span<const double> y,
                                                     std::span<const std::size_t> terminals) {
  const std::size_t l = terminals.size();
  std::vector<detail::ShortestPathTree> trees;
  trees.reserve(l);
  for (std::size_t t : terminals) trees.push_back(detail::dijkstra(g, y, t));
  for (std::size_t b = 1; b < l; ++b) {
    if (std::isinf(trees[0].dist[terminals[b]])) return std::nullopt;
  }

  // Prim over the terminal closure.
  std::vector<bool> in_tree(l, false);
  std::vector<double> best(l, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> link(l, 0);
  in_tree[0] = true;
  for (std::size_t b = 1; b < l; ++b) best[b] = trees[0].dist[terminals[b]];
  std::vector<std::size_t> expanded;
  for (std::size_t step = 1; step < l; ++step) {
    std::optional<std::size_t> next;
    for (std::size_t b = 0; b < l; ++b) {
      if (!in_tree[b] && (!next || best[b] < best[*next])) next = b;
    }
    in_tree[*next] = true;
    auto path = detail::trace_path(g, trees[link[*next]], terminals[*next]);
    expanded.insert(expanded.end(), path.begin(), path.end());
    for (std::size_t b = 0; b < l; ++b) {
      if (!in_tree[b] && trees[*next].dist[terminals[b]] < best[b]) {
        best[b] = trees[*next].dist[terminals[b]];
        link[b] = *next;
      }
    }
  }
  std::sort(expanded.begin(), expanded.end());
  expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());

  // Kruskal on the expanded subgraph.
  std::stable_sort(expanded.begin(), expanded.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  detail::DisjointSets dsu(g.vertex_count());
  std::vector<std::size_t> kept;
  for (std::size_t e : expanded) {
    if (dsu.unite(g.edge(e).u, g.edge(e).v)) kept.push_back(e);
  }

  // Strip non-terminal leaves.
  std::vector<bool> is_terminal(g.vertex_count(), false);
  for (std::size_t t : terminals) is_terminal[t] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> degree(g.vertex_count(), 0);
    for (std::size_t e : kept) ++degree[g.edge(e).u], ++degree[g.edge(e).v];
    auto leafy = [&](std::size_t e) {
      const auto& ed = g.edge(e);
      return (degree[ed.u] == 1 && !is_terminal[ed.u]) || (degree[ed.v] == 1 && !is_terminal[ed.v]);
    };
    auto before = kept.size();
    std::erase_if(kept, leafy);
    changed = kept.size() != before;
  }
  return detail::make_connector(std::move(kept), y);
}

/// S_i = argmin over the firm's paths (unicast) or Steiner trees (multicast,
/// 2-approximate) of Σ_{e∈S} y(e). nullopt when the terminals are disconnected.
inline std::optional<Connector> min_weight_connector(const NetworkInstance& instance,
                                                     std::span<const double> y, std::size_t firm) {
  const auto& f = instance.firm(firm);
  if (instance.mode() == RoutingMode::unicast) {
    return shortest_path(instance.graph(), y, f.terminals[0], f.terminals[1]);
  }
  return steiner_tree_2approx(instance.graph(), y, f.terminals);
}

inline double network_score_value(const Rational& bid, const Rational& demand, double weight) {
  return to_double(bid) / (to_double(demand) * weight);
}

struct RoutedFirm {
  std::size_t firm = 0;
  Connector connector;
  double score = 0.0;       // ratio at selection time
  double mass_after = 0.0;  // Σ c(e) y(e) after the dual update
};

/// Scores a firm by bid / (d(i) · weight of its current cheapest connector),
/// and 0 for everyone once the dual mass reaches ē^{C-1} m.
class NetworkScorer {
 public:
  using value_type = double;

  explicit NetworkScorer(std::shared_ptr<const NetworkInstance> instance)
      : instance_(std::move(instance)), dual_(instance_->graph()) {}

  std::size_t bidder_count() const { return instance_->size(); }

  ExtendedScore<double> score(BidderId i, const Rational& bid) const {
    if (dual_.halted() || bid == 0) return 0.0;
    auto c = min_weight_connector(*instance_, dual_.y(), i);
    if (!c) return 0.0;
    return network_score_value(bid, instance_->firm(i).demand, c->weight);
  }

  void reject(BidderId i, const Rational& bid) {
    auto c = min_weight_connector(*instance_, dual_.y(), i);
    if (!c) throw InternalFault("rejected firm " + std::to_string(i) + " has no connector");
    double s = network_score_value(bid, instance_->firm(i).demand, c->weight);
    dual_.apply(instance_->graph(), *c, instance_->firm(i).demand);
    routed_.push_back({i, std::move(*c), s, dual_.mass()});
  }

  const DualState& dual() const { return dual_; }
  const std::vector<RoutedFirm>& routed() const { return routed_; }

 private:
  std::shared_ptr<const NetworkInstance> instance_;
  DualState dual_;
  std::vector<RoutedFirm> routed_;
};

struct RoutingSolution {
  std::vector<RoutedFirm> routed;          // selection order
  std::vector<std::size_t> infeasible;     // firms whose terminals are disconnected
  DualState dual;                          // final duals
  double initial_mass = 0.0;

  std::vector<std::size_t> retained() const {
    std::vector<std::size_t> out;
    for (const auto& r : routed) out.push_back(r.firm);
    return out;
  }
};

inline void check_values(const NetworkInstance& instance, std::span<const Rational> values) {
  if (values.size() != instance.size()) throw ValidationError("value vector has wrong length");
  for (const auto& v : values) {
    if (v < 0) throw ValidationError("negative firm value");
  }
}

/// Primal-dual greedy routing: repeatedly route the firm with the best
/// value / (demand · connector weight) ratio and grow the duals on its edges,
/// until the dual mass reaches ē^{C-1} m. Firms with zero value are never
/// selected; disconnected firms are reported and excluded.
inline RoutingSolution greedy_routing(const NetworkInstance& instance, std::span<const Rational> values) {
  check_values(instance, values);
  RoutingSolution out;
  out.dual = DualState(instance.graph());
  out.initial_mass = out.dual.mass();
  const std::size_t n = instance.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!min_weight_connector(instance, out.dual.y(), i)) out.infeasible.push_back(i);
  }

  std::vector<bool> remaining(n, true);
  while (!out.dual.halted()) {
    std::optional<std::size_t> pick;
    std::optional<Connector> pick_connector;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!remaining[i] || values[i] == 0) continue;
      auto c = min_weight_connector(instance, out.dual.y(), i);
      if (!c) continue;
      double s = network_score_value(values[i], instance.firm(i).demand, c->weight);
      if (!pick || s > best) pick = i, best = s, pick_connector = std::move(c);
    }
    if (!pick) break;
    remaining[*pick] = false;
    out.dual.apply(instance.graph(), *pick_connector, instance.firm(*pick).demand);
    out.routed.push_back({*pick, std::move(*pick_connector), best, out.dual.mass()});
  }
  return out;
}

struct LoadReport {
  std::vector<Rational> load;            // per edge
  std::vector<std::size_t> violations;   // edges with load > c(e)

  bool feasible() const { return violations.empty(); }
};

inline LoadReport check_capacity_feasibility(const NetworkInstance& instance,
                                             std::span<const RoutedFirm> routed) {
  LoadReport report;
  report.load.assign(instance.graph().edge_count(), Rational(0));
  for (const auto& r : routed) {
    for (std::size_t e : r.connector.edges) report.load.at(e) += instance.firm(r.firm).demand;
  }
  for (std::size_t e = 0; e < report.load.size(); ++e) {
    if (report.load[e] > instance.graph().edge(e).capacity) report.violations.push_back(e);
  }
  return report;
}

struct DualCertificate {
  std::vector<double> slack;  // z(i)
  double edge_mass = 0.0;     // Σ c(e) y(e)
  double bound = 0.0;         // Σ c(e) y(e) + Σ z(i) >= OPT
};

/// Weak-duality upper bound on the optimum welfare from any y >= 0. Each
/// z(i) covers v(i) minus d(i) times a lower bound on the firm's cheapest
/// connector: exact for paths, half the heuristic tree for multicast.
inline DualCertificate dual_certificate(const NetworkInstance& instance, std::span<const double> y,
                                        std::span<const Rational> values) {
  check_values(instance, values);
  const auto& g = instance.graph();
  if (y.size() != g.edge_count()) throw ValidationError("dual vector has wrong length");
  DualCertificate cert;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (y[e] < 0) throw ValidationError("negative edge dual");
    cert.edge_mass += to_double(g.edge(e).capacity) * y[e];
  }
  double total_slack = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double v = to_double(values[i]);
    const double d = to_double(instance.firm(i).demand);
    auto c = min_weight_connector(instance, y, i);
    double z = 0.0;
    if (c) {
      double lower = instance.mode() == RoutingMode::unicast ? c->weight : c->weight / 2.0;
      z = std::max(0.0, v - d * lower);
      if (z + d * lower < v * (1.0 - 1e-12)) {
        throw InternalFault("dual constraint of firm " + std::to_string(i) + " violated");
      }
    }
    cert.slack.push_back(z);
    total_slack += z;
  }
  cert.bound = cert.edge_mass + total_slack;
  return cert;
}

/// γ in the approximation bound: 1 for exact shortest paths, 2 for the
/// metric-closure Steiner heuristic.
inline double connector_gamma(RoutingMode mode) { return mode == RoutingMode::unicast ? 1.0 : 2.0; }

/// ((ē γ C / (C - 1)) m^{1/(C-1)})^{-1}.
inline double routing_ratio_bound(const NetworkInstance& instance) {
  const double c = to_double(instance.graph().min_capacity());
  const double m = static_cast<double>(instance.graph().edge_count());
  const double factor = std::numbers::e * connector_gamma(instance.mode()) * c / (c - 1.0) *
                        std::pow(m, 1.0 / (c - 1.0));
  return 1.0 / factor;
}

}  // namespace daa
