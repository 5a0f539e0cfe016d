#include "udg/gadgets.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace udg {

namespace {

using EdgeList = std::vector<std::tuple<VertexId, VertexId, double>>;

RodPtr finish(WeightedGraph graph, LengthExpr length, RodTracePtr trace) {
  auto rod = std::make_shared<RodCertificate>();
  rod->graph = std::move(graph);
  rod->u = 0;
  rod->v = 1;
  rod->length = std::move(length);
  rod->trace = std::move(trace);
  return rod;
}

}  // namespace

RodPtr unit_edge_rod() {
  static const RodPtr rod = [] {
    auto trace = std::make_shared<RodTrace>();
    trace->kind = RodTrace::Kind::UnitEdge;
    return finish(build_graph(2, {{0, 1, 1.0}}), LengthExpr::unit(), trace);
  }();
  return rod;
}

// Layout: A=0, B=1 (terminals), C=2, K1 = 3..d+2, K2 = d+3..2d+2.
RodPtr moser_spindle(int d) {
  dimension_constants(d);
  const VertexId A = 0, B = 1, C = 2;
  const VertexId k1 = 3;
  const VertexId k2 = static_cast<VertexId>(3 + d);
  EdgeList edges;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      edges.emplace_back(k1 + i, k1 + j, 1.0);
      edges.emplace_back(k2 + i, k2 + j, 1.0);
    }
  for (int i = 0; i < d; ++i) {
    edges.emplace_back(A, k1 + i, 1.0);
    edges.emplace_back(B, k1 + i, 1.0);
    edges.emplace_back(A, k2 + i, 1.0);
    edges.emplace_back(C, k2 + i, 1.0);
  }
  edges.emplace_back(B, C, 1.0);
  auto trace = std::make_shared<RodTrace>();
  trace->kind = RodTrace::Kind::Spindle;
  trace->d = d;
  return finish(build_graph(static_cast<std::size_t>(2 * d + 3), edges),
                LengthExpr::d_pow(d, 1), trace);
}

WeightedGraph substitute_edge(const WeightedGraph& g, std::size_t edge_index,
                              const RodCertificate& rod) {
  if (edge_index >= g.edge_count())
    fail(ErrorCode::EdgeNotFound, "edge index " + std::to_string(edge_index));
  const Edge target = g.edges()[edge_index];
  if (std::abs(rod.length_value() - target.len) > 1e-12)
    fail(ErrorCode::LengthMismatch,
         "rod length " + std::to_string(rod.length_value()) + " vs edge length " +
             std::to_string(target.len));

  const std::size_t base = g.vertex_count();
  auto map_id = [&](VertexId x) -> VertexId {
    if (x == rod.u) return target.u;
    if (x == rod.v) return target.v;
    VertexId interior = x - (x > rod.u) - (x > rod.v);
    return static_cast<VertexId>(base + interior);
  };

  EdgeList edges;
  edges.reserve(g.edge_count() - 1 + rod.graph.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (i == edge_index) continue;
    const Edge& e = g.edges()[i];
    edges.emplace_back(e.u, e.v, e.len);
  }
  for (const Edge& e : rod.graph.edges())
    edges.emplace_back(map_id(e.u), map_id(e.v), e.len);
  return build_graph(base + rod.graph.vertex_count() - 2, edges);
}

RodPtr rod_multiply(const RodPtr& a, const RodPtr& b) {
  if (!a->graph.unit_lengths() || !b->graph.unit_lengths())
    fail(ErrorCode::LengthMismatch, "rod_multiply requires unit rods");
  const std::size_t na = a->graph.vertex_count();
  const std::size_t nb = b->graph.vertex_count();
  const std::size_t interior = nb - 2;

  EdgeList edges;
  edges.reserve(a->graph.edge_count() * b->graph.edge_count());
  for (std::size_t j = 0; j < a->graph.edge_count(); ++j) {
    const Edge host = a->graph.edges()[j];
    const std::size_t base = na + j * interior;
    auto map_id = [&](VertexId x) -> VertexId {
      if (x == b->u) return host.u;
      if (x == b->v) return host.v;
      VertexId k = x - (x > b->u) - (x > b->v);
      return static_cast<VertexId>(base + k);
    };
    for (const Edge& e : b->graph.edges())
      edges.emplace_back(map_id(e.u), map_id(e.v), 1.0);
  }

  auto trace = std::make_shared<RodTrace>();
  trace->kind = RodTrace::Kind::Multiply;
  trace->frame = a;
  trace->part = b;
  return finish(build_graph(na + a->graph.edge_count() * interior, edges),
                LengthExpr::product(a->length, b->length), trace);
}

RodPtr rod_power(int d, int k) {
  dimension_constants(d);
  if (k < 0) fail(ErrorCode::BadInput, "rod_power exponent must be >= 0");
  if (k == 0) return unit_edge_rod();
  RodPtr rod = moser_spindle(d);
  for (int i = 2; i <= k; ++i) rod = rod_multiply(rod, moser_spindle(d));
  if (k == 1) return rod;
  // Same float value as the Product chain (left-associated multiplication),
  // in normalized form.
  auto out = std::make_shared<RodCertificate>(*rod);
  out->length = LengthExpr::d_pow(d, k);
  return out;
}

AngularIndex angular_index_search(double a, double b, int d, long iteration_cap) {
  if (!(a > 0.0) || !(a < b) || !(b < 1.0))
    fail(ErrorCode::InvalidInterval,
         "need 0 < a < b < 1, got a=" + std::to_string(a) + " b=" + std::to_string(b));
  const DimensionConstants c = dimension_constants(d);
  const double lo = 2.0 * std::asin(a / (2.0 * c.r0));
  const double hi = 2.0 * std::asin(b / (2.0 * c.r0));
  constexpr double kGuard = 1e-12;
  for (long i = 2; i <= iteration_cap; ++i) {
    const double x = std::fmod(static_cast<double>(i - 1) * c.alpha, kTwoPi);
    if (x > lo + kGuard && x < hi - kGuard) return {i, x};
  }
  fail(ErrorCode::IterationCapExceeded,
       "no angular index within cap " + std::to_string(iteration_cap));
}

namespace layout {

VertexId lemma3_path_vertex(int d, long N, long i) {
  if (i == 1) return 0;
  if (i == N) return 1;
  return static_cast<VertexId>(d + i - 1);
}

VertexId lemma3_clique_vertex(long j) { return static_cast<VertexId>(2 + j); }

std::size_t lemma3_block_base(int d, long N, long j) {
  return static_cast<std::size_t>(N + d - 1) + static_cast<std::size_t>(j) * (2 * d + 1);
}

}  // namespace layout

namespace {
using layout::lemma3_block_base;
using layout::lemma3_clique_vertex;
using layout::lemma3_path_vertex;
}  // namespace

RodPtr lemma3_rod(double a, double b, int d, long iteration_cap) {
  const DimensionConstants c = dimension_constants(d);
  const AngularIndex found = angular_index_search(a, b, d, iteration_cap);
  const long N = found.index;
  const RodPtr spindle = moser_spindle(d);

  EdgeList edges;
  for (long i = 0; i + 1 < d - 1; ++i)
    for (long j = i + 1; j < d - 1; ++j)
      edges.emplace_back(lemma3_clique_vertex(i), lemma3_clique_vertex(j), 1.0);
  for (long i = 1; i <= N; ++i)
    for (long j = 0; j < d - 1; ++j)
      edges.emplace_back(lemma3_path_vertex(d, N, i), lemma3_clique_vertex(j), 1.0);
  for (long i = 1; i < N; ++i)
    edges.emplace_back(lemma3_path_vertex(d, N, i), lemma3_path_vertex(d, N, i + 1), 1.0);

  const std::size_t skeleton_vertices = static_cast<std::size_t>(N + d - 1);
  const std::size_t skeleton_edges = edges.size() + static_cast<std::size_t>(N - 2);

  for (long j = 0; j + 2 < N; ++j) {
    const VertexId pu = lemma3_path_vertex(d, N, j + 1);
    const VertexId pv = lemma3_path_vertex(d, N, j + 3);
    const std::size_t base = lemma3_block_base(d, N, j);
    auto map_id = [&](VertexId x) -> VertexId {
      if (x == 0) return pu;
      if (x == 1) return pv;
      return static_cast<VertexId>(base + (x - 2));
    };
    for (const Edge& e : spindle->graph.edges())
      edges.emplace_back(map_id(e.u), map_id(e.v), 1.0);
  }

  auto trace = std::make_shared<RodTrace>();
  trace->kind = RodTrace::Kind::Lemma3;
  trace->d = d;
  trace->path = N;
  trace->spindle = spindle;
  trace->skeleton_vertices = skeleton_vertices;
  trace->skeleton_edges = skeleton_edges;

  const std::size_t total =
      skeleton_vertices + static_cast<std::size_t>(N - 2) * (2 * d + 1);
  (void)c;
  return finish(build_graph(total, edges), LengthExpr::chord_index(d, N), trace);
}

RodPtr RodCache::get_or_build(double a, double b, int d) {
  const auto key = std::make_tuple(a, b, d);
  std::shared_ptr<std::once_flag> flag;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = flags_[key];
    if (!slot) slot = std::make_shared<std::once_flag>();
    flag = slot;
  }
  std::call_once(*flag, [&] {
    RodPtr rod = make_rod(a, b, d, nullptr);
    std::lock_guard<std::mutex> lock(mutex_);
    built_[key] = std::move(rod);
  });
  std::lock_guard<std::mutex> lock(mutex_);
  return built_.at(key);
}

RodCache& default_rod_cache() {
  static RodCache cache;
  return cache;
}

RodPtr make_rod(double a, double b, int d, RodCache* cache) {
  if (!(a > 0.0) || !(a < b))
    fail(ErrorCode::InvalidInterval,
         "need 0 < a < b, got a=" + std::to_string(a) + " b=" + std::to_string(b));
  dimension_constants(d);
  if (cache) return cache->get_or_build(a, b, d);

  const double D = dimension_constants(d).D;
  int k = 0;
  double scale = 1.0;
  while (!(scale > b && a / scale > 0.0 && a / scale < 1.0 && b / scale < 1.0)) {
    ++k;
    scale *= D;
  }
  const RodPtr inner = lemma3_rod(a / scale, b / scale, d);
  if (k == 0) return inner;
  return rod_multiply(rod_power(d, k), inner);
}

}  // namespace udg
