#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "daa/errors.hpp"

namespace daa {

/// Small undirected simple graph with both adjacency lists and a matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n), matrix_(n * n, false) {}

  static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self loop on vertex " + std::to_string(u));
    if (adjacent(u, v)) return;
    matrix_[u * size() + v] = matrix_[v * size() + u] = true;
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
  }

  std::size_t size() const { return adj_.size(); }
  bool adjacent(std::size_t u, std::size_t v) const { return matrix_[u * size() + v]; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& row : adj_) d = std::max(d, row.size());
    return d;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u) {
      for (std::size_t v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool is_independent(std::span<const std::size_t> vertices) const {
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        if (vertices[a] == vertices[b] || adjacent(vertices[a], vertices[b])) return false;
      }
    }
    return true;
  }

  /// Induced subgraph on `keep` (any order); vertex j of the result is keep[j].
  Graph induced(std::span<const std::size_t> keep) const {
    Graph g(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
      for (std::size_t b = a + 1; b < keep.size(); ++b) {
        if (adjacent(keep[a], keep[b])) g.add_edge(a, b);
      }
    }
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<bool> matrix_;
};

}  // namespace daa
