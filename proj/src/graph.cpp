#include "udg/graph.hpp"

#include <algorithm>
#include <string>

namespace udg {

std::size_t WeightedGraph::find_edge(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  Edge probe{a, b, 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge& x, const Edge& y) {
                               return std::tie(x.u, x.v) < std::tie(y.u, y.v);
                             });
  if (it == edges_.end() || it->u != a || it->v != b) return npos;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool WeightedGraph::unit_lengths(double tol) const {
  for (const Edge& e : edges_) {
    if (std::abs(e.len - 1.0) > tol) return false;
  }
  return true;
}

bool WeightedGraph::connected() const {
  if (vertex_count_ <= 1) return true;
  std::vector<std::vector<VertexId>> adj(vertex_count_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(vertex_count_, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == vertex_count_;
}

WeightedGraph build_graph(
    std::size_t vertex_count,
    const std::vector<std::tuple<VertexId, VertexId, double>>& edges) {
  WeightedGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_.reserve(edges.size());
  for (const auto& [a, b, len] : edges) {
    if (a == b)
      fail(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a));
    if (a >= vertex_count || b >= vertex_count)
      fail(ErrorCode::VertexOutOfRange,
           "edge endpoint exceeds vertex count " + std::to_string(vertex_count));
    if (!(len > 0.0))
      fail(ErrorCode::NonPositiveLength,
           "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    Edge e{std::min(a, b), std::max(a, b), len};
    g.edges_.push_back(e);
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i - 1].u == g.edges_[i].u && g.edges_[i - 1].v == g.edges_[i].v)
      fail(ErrorCode::DuplicateEdge,
           "edge (" + std::to_string(g.edges_[i].u) + "," +
               std::to_string(g.edges_[i].v) + ") listed twice");
  }
  return g;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::MissingVertexCoordinates: return "MissingVertexCoordinates";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EdgeNotFound: return "EdgeNotFound";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::InvalidInputGraph: return "InvalidInputGraph";
    case ErrorCode::RodUnavailable: return "RodUnavailable";
    case ErrorCode::InvalidColoring: return "InvalidColoring";
    case ErrorCode::PartialColoring: return "PartialColoring";
    case ErrorCode::TriangleInfeasible: return "TriangleInfeasible";
    case ErrorCode::DegeneracyRetryExhausted: return "DegeneracyRetryExhausted";
    case ErrorCode::NotAnEmbedding: return "NotAnEmbedding";
    case ErrorCode::DegenerateK: return "DegenerateK";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InsufficientSuccesses: return "InsufficientSuccesses";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace udg
