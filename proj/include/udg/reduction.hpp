#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "udg/gadgets.hpp"
#include "udg/graph.hpp"

namespace udg {

/// A simple unweighted graph: the 3-coloring instance.
struct SimpleGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // canonical u < v, sorted
};

SimpleGraph make_simple_graph(std::size_t vertex_count,
                              std::vector<std::pair<VertexId, VertexId>> edges);

/// Interval data of the apex lemma: 0 <= l < L <= R < r with r possibly
/// unbounded (never a sentinel float).
struct ApexInterval {
  double l = 0.0;
  double L = 0.0;
  double R = 0.0;
  std::optional<double> r;  // nullopt = unbounded

  double delta() const;  // min(L - l, r - R); L - l when unbounded
};

/// True iff (a, b) sit in their delta-intervals around ((L+R)/2, (R-L)/2)
/// and the implied chain l < a-b < L <= R < a+b < r holds.
bool lemma4_bounds_check(const ApexInterval& iv, double a, double b);

/// The apex edge lengths of one vertex-pair class, with their rods.
struct ApexLengths {
  double delta = 0.0;
  double a = 0.0;
  double b = 0.0;
  RodPtr rod_a;
  RodPtr rod_b;
  ApexInterval interval;
};

struct ReductionParams {
  int d = 3;
  double epsilon = 0.0;  // pi / 24
  double r0 = 0.0;
  ApexLengths uu;  // anchor-anchor pairs
  ApexLengths uv;  // vertex-anchor pairs
  ApexLengths vv;  // adjacent vertex pairs
};

/// Computes the three delta values, the six rod lengths (building the rods
/// through the cache) and verifies each pair against lemma4_bounds_check.
ReductionParams reduction_params(int d, RodCache* cache = &default_rod_cache());

struct VertexRole {
  enum class Kind : std::uint8_t { K, U, V, AuxUU, AuxVU, AuxVV };
  Kind kind = Kind::K;
  std::uint32_t a = 0;  // U/V index; first endpoint for aux kinds
  std::uint32_t b = 0;  // second endpoint for aux kinds
};

const char* role_kind_name(VertexRole::Kind kind);

/// The compiled weighted graph H with vertex roles and back-references.
/// Vertex order: K clique, u0 u1 u2, v_0..v_{n-1}, aux_uu (01, 02, 12),
/// aux_vu (v-major, u-minor), aux_vv in edge order of G.
struct ReductionInstance {
  WeightedGraph h;
  std::vector<VertexRole> roles;
  SimpleGraph source;
  ReductionParams params;

  VertexId k_vertex(std::uint32_t i) const { return i; }
  VertexId u_vertex(std::uint32_t i) const;
  VertexId v_vertex(std::uint32_t i) const;
  VertexId aux_uu_vertex(std::uint32_t pair_index) const;  // 0:(u0,u1) 1:(u0,u2) 2:(u1,u2)
  VertexId aux_vu_vertex(std::uint32_t v, std::uint32_t u) const;
  VertexId aux_vv_vertex(std::uint32_t edge_index) const;
};

ReductionInstance build_reduction(const SimpleGraph& g, int d,
                                  RodCache* cache = &default_rod_cache());

/// Where an expanded vertex came from: an original H vertex, or interior
/// vertex `interior_index` of the rod substituted into H edge `h_edge`.
struct ProvenanceEntry {
  bool original = true;
  VertexId h_vertex = 0;
  std::size_t h_edge = 0;
  std::uint32_t interior_index = 0;
};

struct ExpandedInstance {
  WeightedGraph graph;  // w == 1 everywhere
  std::vector<ProvenanceEntry> provenance;
  std::vector<std::size_t> substituted_edges;  // indices into inst.h.edges()
};

/// Replaces every non-unit edge of H by the rod realizing its exact length
/// (six distinct rod shapes), relabeling rod interiors by arithmetic offset.
ExpandedInstance expand_to_unit(const ReductionInstance& inst);

}  // namespace udg
