#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "udg/errors.hpp"

namespace udg {

using VertexId = std::uint32_t;

/// Undirected edge with canonical endpoint order (u < v) and positive length.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double len = 1.0;

  bool operator==(const Edge& other) const {
    return u == other.u && v == other.v && len == other.len;
  }
};

/// Finite weighted graph over dense vertex ids 0..n-1. Immutable by
/// convention once built; edges are kept sorted by (u, v).
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Index into edges() for endpoints (a, b), or npos.
  std::size_t find_edge(VertexId a, VertexId b) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool unit_lengths(double tol = 0.0) const;
  bool connected() const;

  friend WeightedGraph build_graph(
      std::size_t vertex_count,
      const std::vector<std::tuple<VertexId, VertexId, double>>& edges);

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Validates, canonicalizes (u < v, sorted) and builds a graph.
/// Throws SelfLoop, DuplicateEdge, NonPositiveLength, VertexOutOfRange.
WeightedGraph build_graph(
    std::size_t vertex_count,
    const std::vector<std::tuple<VertexId, VertexId, double>>& edges);

}  // namespace udg
