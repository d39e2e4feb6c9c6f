#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "daa/auction.hpp"
#include "daa/errors.hpp"
#include "daa/graph.hpp"
#include "daa/rational.hpp"

namespace daa {

struct Interval {
  Rational left;
  Rational length;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Disk {
  Rational x;
  Rational y;
  Rational radius;
  friend bool operator==(const Disk&, const Disk&) = default;
};

struct IntervalGeometry {
  std::vector<Interval> intervals;
  friend bool operator==(const IntervalGeometry&, const IntervalGeometry&) = default;
};

struct DiskGeometry {
  std::vector<Disk> disks;
  friend bool operator==(const DiskGeometry&, const DiskGeometry&) = default;
};

struct ExplicitGeometry {
  Graph graph;
  std::size_t degree_bound = 0;
  friend bool operator==(const ExplicitGeometry&, const ExplicitGeometry&) = default;
};

using GeometrySpec = std::variant<IntervalGeometry, DiskGeometry, ExplicitGeometry>;

inline std::size_t vertex_count(const GeometrySpec& geometry) {
  struct {
    std::size_t operator()(const IntervalGeometry& g) const { return g.intervals.size(); }
    std::size_t operator()(const DiskGeometry& g) const { return g.disks.size(); }
    std::size_t operator()(const ExplicitGeometry& g) const { return g.graph.size(); }
  } visitor;
  return std::visit(visitor, geometry);
}

/// Closed intervals/disks; touching counts as interference.
inline Graph build_interference_graph(const GeometrySpec& geometry) {
  if (const auto* g = std::get_if<IntervalGeometry>(&geometry)) {
    const auto& iv = g->intervals;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (iv[i].length <= 0) {
        throw ValidationError("interval " + std::to_string(i) + " has nonpositive length");
      }
    }
    Graph out(iv.size());
    for (std::size_t a = 0; a < iv.size(); ++a) {
      for (std::size_t b = a + 1; b < iv.size(); ++b) {
        if (iv[a].left <= iv[b].left + iv[b].length && iv[b].left <= iv[a].left + iv[a].length) {
          out.add_edge(a, b);
        }
      }
    }
    return out;
  }
  if (const auto* g = std::get_if<DiskGeometry>(&geometry)) {
    const auto& dk = g->disks;
    for (std::size_t i = 0; i < dk.size(); ++i) {
      if (dk[i].radius <= 0) {
        throw ValidationError("disk " + std::to_string(i) + " has nonpositive radius");
      }
    }
    Graph out(dk.size());
    for (std::size_t a = 0; a < dk.size(); ++a) {
      for (std::size_t b = a + 1; b < dk.size(); ++b) {
        Rational dx = dk[a].x - dk[b].x, dy = dk[a].y - dk[b].y;
        Rational reach = dk[a].radius + dk[b].radius;
        if (dx * dx + dy * dy <= reach * reach) out.add_edge(a, b);
      }
    }
    return out;
  }
  const auto& g = std::get<ExplicitGeometry>(geometry);
  if (g.graph.max_degree() > g.degree_bound) {
    throw ValidationError("explicit graph has degree " + std::to_string(g.graph.max_degree()) +
                          " above its declared bound " + std::to_string(g.degree_bound));
  }
  return g.graph;
}

/// γ = l_max / l_min over interval lengths or disk radii.
inline Rational length_ratio(const GeometrySpec& geometry) {
  std::vector<Rational> sizes;
  if (const auto* g = std::get_if<IntervalGeometry>(&geometry)) {
    for (const auto& i : g->intervals) sizes.push_back(i.length);
  } else if (const auto* g = std::get_if<DiskGeometry>(&geometry)) {
    for (const auto& d : g->disks) sizes.push_back(d.radius);
  } else {
    throw ValidationError("length ratio is undefined for explicit graphs");
  }
  if (sizes.empty()) return Rational(1);
  auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  if (*lo <= 0) throw ValidationError("nonpositive length or radius");
  return *hi / *lo;
}

/// Approximation parameter α of the greedy: 2+γ for intervals, (2+γ)² for
/// disks, d for degree-bounded graphs.
inline Rational claw_bound(const GeometrySpec& geometry) {
  if (const auto* g = std::get_if<ExplicitGeometry>(&geometry)) {
    return Rational(static_cast<std::int64_t>(g->degree_bound));
  }
  Rational base = 2 + length_ratio(geometry);
  return std::holds_alternative<DiskGeometry>(geometry) ? base * base : base;
}

/// Largest set of pairwise non-adjacent neighbors of v, by exhaustive search.
inline std::size_t max_independent_neighbors(const Graph& graph, std::size_t v) {
  const auto& nb = graph.neighbors(v);
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, chosen.size());
    if (chosen.size() + (nb.size() - from) <= best) return;
    for (std::size_t j = from; j < nb.size(); ++j) {
      bool ok = std::none_of(chosen.begin(), chosen.end(),
                             [&](std::size_t u) { return graph.adjacent(u, nb[j]); });
      if (!ok) continue;
      chosen.push_back(nb[j]);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

class SpectrumInstance {
 public:
  SpectrumInstance(GeometrySpec geometry, std::size_t channels)
      : geometry_(std::move(geometry)), channels_(channels), graph_(build_interference_graph(geometry_)) {
    if (channels_ < 1) throw ValidationError("channel count must be at least 1");
  }

  const GeometrySpec& geometry() const { return geometry_; }
  std::size_t channels() const { return channels_; }
  const Graph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }

  friend bool operator==(const SpectrumInstance& a, const SpectrumInstance& b) {
    return a.geometry_ == b.geometry_ && a.channels_ == b.channels_;
  }

 private:
  GeometrySpec geometry_;
  std::size_t channels_;
  Graph graph_;
};

/// The k independent sets I_1..I_k built so far.
class ColoringState {
 public:
  ColoringState() = default;
  ColoringState(std::size_t vertices, std::size_t channels)
      : classes_(channels), class_of_(vertices, std::nullopt) {}

  std::optional<std::size_t> first_fitting_class(const Graph& graph, std::size_t v) const {
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      bool fits = std::none_of(classes_[c].begin(), classes_[c].end(),
                               [&](std::size_t u) { return graph.adjacent(u, v); });
      if (fits) return c;
    }
    return std::nullopt;
  }

  void assign(std::size_t v, std::size_t c) {
    if (class_of_.at(v)) throw InternalFault("vertex " + std::to_string(v) + " colored twice");
    classes_.at(c).push_back(v);
    class_of_[v] = c;
  }

  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::optional<std::size_t> class_of(std::size_t v) const { return class_of_.at(v); }

  std::vector<std::size_t> colored() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < class_of_.size(); ++v) {
      if (class_of_[v]) out.push_back(v);
    }
    return out;
  }

  bool is_valid(const Graph& graph) const {
    for (const auto& cls : classes_) {
      if (!graph.is_independent(cls)) return false;
    }
    return true;
  }

 private:
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::optional<std::size_t>> class_of_;
};

namespace detail {

// Positive-weight vertices by decreasing weight, ties by index.
inline std::vector<std::size_t> by_decreasing_weight(std::span<const Rational> weights) {
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] > 0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

inline void check_weights(const Graph& graph, std::span<const Rational> weights) {
  if (weights.size() != graph.size()) throw ValidationError("weight vector has wrong length");
  for (const auto& w : weights) {
    if (w < 0) throw ValidationError("negative vertex weight");
  }
}

}  // namespace detail

struct KColoringResult {
  std::vector<std::size_t> order;  // vertices in the order they were colored
  ColoringState coloring;
  Rational welfare{0};

  std::vector<std::size_t> retained() const { return coloring.colored(); }
};

/// Greedy max-weight k-colorable subgraph: vertices by decreasing weight, each
/// into the lowest-index class it fits. Zero-weight vertices are skipped.
inline KColoringResult greedy_k_colorable(const SpectrumInstance& instance,
                                          std::span<const Rational> weights) {
  const Graph& g = instance.graph();
  detail::check_weights(g, weights);
  KColoringResult out{{}, ColoringState(g.size(), instance.channels()), Rational(0)};
  for (std::size_t v : detail::by_decreasing_weight(weights)) {
    if (auto c = out.coloring.first_fitting_class(g, v)) {
      out.coloring.assign(v, *c);
      out.order.push_back(v);
      out.welfare += weights[v];
    }
  }
  return out;
}

/// Scores a vertex by its bid while some channel can still take it, else 0.
class SpectrumScorer {
 public:
  using value_type = Rational;

  explicit SpectrumScorer(std::shared_ptr<const SpectrumInstance> instance)
      : instance_(std::move(instance)),
        state_(instance_->size(), instance_->channels()) {}

  std::size_t bidder_count() const { return instance_->size(); }

  ExtendedScore<Rational> score(BidderId v, const Rational& bid) const {
    return state_.first_fitting_class(instance_->graph(), v) ? bid : Rational(0);
  }

  void reject(BidderId v, const Rational& /*bid*/) {
    auto c = state_.first_fitting_class(instance_->graph(), v);
    if (!c) throw InternalFault("rejected vertex " + std::to_string(v) + " fits no channel");
    state_.assign(v, *c);
  }

  const ColoringState& state() const { return state_; }
  const SpectrumInstance& instance() const { return *instance_; }

 private:
  std::shared_ptr<const SpectrumInstance> instance_;
  ColoringState state_;
};

/// Greedy MWIS: take vertices by decreasing weight while independent.
/// Returns the selection in the order taken.
inline std::vector<std::size_t> greedy_mwis(const Graph& graph, std::span<const Rational> weights) {
  detail::check_weights(graph, weights);
  std::vector<std::size_t> picked;
  std::vector<bool> blocked(graph.size(), false);
  for (std::size_t v : detail::by_decreasing_weight(weights)) {
    if (blocked[v]) continue;
    picked.push_back(v);
    for (std::size_t u : graph.neighbors(v)) blocked[u] = true;
  }
  return picked;
}

struct SequentialColoring {
  std::vector<std::vector<std::size_t>> classes;  // in original vertex ids
  Rational welfare{0};

  std::vector<std::size_t> retained() const {
    std::vector<std::size_t> out;
    for (const auto& c : classes) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Runs an MWIS subroutine k times on the shrinking residual graph. The
/// subroutine sees the residual graph with vertices renumbered in increasing
/// original order: (const Graph&, span<const Rational>) -> vector<size_t>.
template <class Mwis>
SequentialColoring sequential_k_color(const SpectrumInstance& instance,
                                      std::span<const Rational> weights, Mwis&& subroutine) {
  const Graph& g = instance.graph();
  detail::check_weights(g, weights);
  std::vector<std::size_t> residual(g.size());
  std::iota(residual.begin(), residual.end(), std::size_t{0});

  SequentialColoring out;
  for (std::size_t round = 0; round < instance.channels(); ++round) {
    Graph sub = g.induced(residual);
    std::vector<Rational> sub_weights;
    for (std::size_t v : residual) sub_weights.push_back(weights[v]);
    std::vector<std::size_t> local = subroutine(std::as_const(sub), std::span<const Rational>(sub_weights));

    std::vector<std::size_t> chosen;
    for (std::size_t j : local) {
      if (j >= residual.size()) throw InternalFault("MWIS subroutine returned an unknown vertex");
      chosen.push_back(residual[j]);
    }
    if (!g.is_independent(chosen)) throw InternalFault("MWIS subroutine returned a dependent set");
    for (std::size_t v : chosen) out.welfare += weights[v];
    std::vector<bool> drop(g.size(), false);
    for (std::size_t v : chosen) drop[v] = true;
    std::erase_if(residual, [&](std::size_t v) { return drop[v]; });
    out.classes.push_back(std::move(chosen));
  }
  return out;
}

}  // namespace daa
