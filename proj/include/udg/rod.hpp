#pragma once

#include <memory>

#include "udg/graph.hpp"
#include "udg/length_expr.hpp"

namespace udg {

struct RodTrace;
using RodTracePtr = std::shared_ptr<const RodTrace>;

/// A weighted graph with two terminals whose distance is forced to a fixed
/// value in every embedding, together with the symbolic value and the
/// construction tree. All constructors in this library place the terminals
/// at vertex ids 0 and 1.
struct RodCertificate {
  WeightedGraph graph;
  VertexId u = 0;
  VertexId v = 1;
  LengthExpr length;
  RodTracePtr trace;

  double length_value() const { return length.value(); }
};

using RodPtr = std::shared_ptr<const RodCertificate>;

struct RodTrace {
  enum class Kind : std::uint8_t { UnitEdge, Spindle, Multiply, Lemma3 };
  Kind kind = Kind::UnitEdge;
  int d = 0;      // Spindle, Lemma3
  long path = 0;  // Lemma3: number of circle vertices N

  // Multiply: every edge of frame was replaced by a copy of part.
  RodPtr frame;
  RodPtr part;

  // Lemma3: the spindle substituted into the skip edges, plus the skeleton
  // size before that substitution.
  RodPtr spindle;
  std::size_t skeleton_vertices = 0;
  std::size_t skeleton_edges = 0;
};

}  // namespace udg
