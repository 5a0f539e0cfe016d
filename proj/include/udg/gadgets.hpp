#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "udg/constants.hpp"
#include "udg/rod.hpp"

namespace udg {

/// Rod of length 1: two vertices, one unit edge. Identity of rod_multiply.
RodPtr unit_edge_rod();

/// The d-dimensional Moser spindle: 2d+3 vertices, 2 C(d,2) + 4d + 1 unit
/// edges, terminals (A, B) = (0, 1) forced to distance D = 2h.
RodPtr moser_spindle(int d);

/// Replaces edge `edge_index` of g by the rod, identifying the rod terminals
/// with the edge endpoints and relabeling the rod interior to fresh ids.
/// Requires the rod length to match the edge length to 1e-12.
WeightedGraph substitute_edge(const WeightedGraph& g, std::size_t edge_index,
                              const RodCertificate& rod);

/// Rod of length a.length * b.length: every edge of a (rescaled to b's
/// length) is replaced by a copy of b. Both inputs must be unit rods.
/// |V| = |V_a| + |E_a| (|V_b| - 2), |E| = |E_a| |E_b|; terminals are a's.
RodPtr rod_multiply(const RodPtr& a, const RodPtr& b);

/// Unit rod of length D^k (k = 0 is the unit edge, k = 1 the spindle).
RodPtr rod_power(int d, int k);

struct AngularIndex {
  long index = 0;  // N
  double angle = 0.0;  // x_N = (N-1) alpha mod 2pi
};

/// Smallest N >= 2 with x_N = (N-1) alpha mod 2pi strictly inside
/// (2 arcsin(a/2r0), 2 arcsin(b/2r0)), so that chord(x_N) lies in (a, b).
/// Requires 0 < a < b < 1. Window comparisons use a 1e-12 guard band.
AngularIndex angular_index_search(double a, double b, int d,
                                  long iteration_cap = 10000000L);

/// Unit rod whose length chord(x_N) falls strictly inside (a, b) for
/// 0 < a < b < 1: a clique of size d-1, N circle vertices joined to it,
/// unit consecutive edges, and skip edges of length D expanded into spindles.
RodPtr lemma3_rod(double a, double b, int d, long iteration_cap = 10000000L);

/// Thread-safe get-or-build cache keyed by exact (a, b, d) bounds.
class RodCache {
 public:
  RodPtr get_or_build(double a, double b, int d);

 private:
  std::mutex mutex_;
  std::map<std::tuple<double, double, int>, std::shared_ptr<std::once_flag>> flags_;
  std::map<std::tuple<double, double, int>, RodPtr> built_;
};

RodCache& default_rod_cache();

/// Unit rod with length strictly inside (a, b) for any 0 < a < b: picks the
/// smallest k with D^k > b and both bounds scaled into (0, 1), then
/// multiplies the D^k rod with the scaled-interval rod of lemma3_rod.
/// Deterministic for fixed (a, b, d); results are cached.
RodPtr make_rod(double a, double b, int d, RodCache* cache = &default_rod_cache());

/// Vertex id conventions of the rod constructors, shared with the canonical
/// embedding builders.
namespace layout {

// Spindle: A=0, B=1 (terminals), C=2, K1 = 3..d+2, K2 = d+3..2d+2.
constexpr VertexId kSpindleA = 0;
constexpr VertexId kSpindleB = 1;
constexpr VertexId kSpindleC = 2;
constexpr VertexId kSpindleK1 = 3;
inline VertexId spindle_k2(int d) { return static_cast<VertexId>(3 + d); }

// Lemma3: terminals 0 = path(1), 1 = path(N); clique 2..d; path interiors
// d+1..d+N-2; one block of 2d+1 spindle interiors per skip edge.
VertexId lemma3_path_vertex(int d, long N, long i);   // i in 1..N
VertexId lemma3_clique_vertex(long j);                // j in 0..d-2
std::size_t lemma3_block_base(int d, long N, long skip_index);

// Multiply: frame ids unchanged; part interiors per frame edge index.
inline std::size_t multiply_block_base(std::size_t frame_vertices,
                                       std::size_t part_vertices,
                                       std::size_t edge_index) {
  return frame_vertices + edge_index * (part_vertices - 2);
}

}  // namespace layout

}  // namespace udg
