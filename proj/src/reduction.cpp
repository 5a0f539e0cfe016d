#include "udg/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace udg {

namespace {
using EdgeList = std::vector<std::tuple<VertexId, VertexId, double>>;
}

SimpleGraph make_simple_graph(std::size_t vertex_count,
                              std::vector<std::pair<VertexId, VertexId>> edges) {
  for (auto& [a, b] : edges) {
    if (a == b) fail(ErrorCode::InvalidInputGraph, "self-loop at " + std::to_string(a));
    if (a >= vertex_count || b >= vertex_count)
      fail(ErrorCode::InvalidInputGraph, "edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i - 1] == edges[i])
      fail(ErrorCode::InvalidInputGraph, "duplicate edge in simple graph");
  return SimpleGraph{vertex_count, std::move(edges)};
}

double ApexInterval::delta() const {
  const double left = L - l;
  if (!r) return left;
  return std::min(left, *r - R);
}

bool lemma4_bounds_check(const ApexInterval& iv, double a, double b) {
  if (!(iv.l >= 0.0 && iv.l < iv.L && iv.L <= iv.R)) return false;
  if (iv.r && !(iv.R < *iv.r)) return false;
  const double delta = iv.delta();
  if (!(delta > 0.0)) return false;
  const double mid = (iv.L + iv.R) / 2.0;
  const double gap = (iv.R - iv.L) / 2.0;
  if (!(a > mid - delta / 3.0 && a < mid + delta / 3.0)) return false;
  if (!(b > gap + delta / 3.0 && b < gap + delta / 2.0)) return false;
  if (!(iv.l < a - b && a - b < iv.L)) return false;
  if (!(iv.R < a + b)) return false;
  if (iv.r && !(a + b < *iv.r)) return false;
  return true;
}

ReductionParams reduction_params(int d, RodCache* cache) {
  const DimensionConstants c = dimension_constants(d);
  ReductionParams params;
  params.d = d;
  params.epsilon = kPi / 24.0;
  params.r0 = c.r0;
  const double eps = params.epsilon;
  auto ch = [&](double theta) { return chord(theta, d); };

  auto build = [&](ApexInterval iv) {
    ApexLengths out;
    out.interval = iv;
    out.delta = iv.delta();
    const double mid = (iv.L + iv.R) / 2.0;
    const double gap = (iv.R - iv.L) / 2.0;
    out.rod_a = make_rod(mid - out.delta / 3.0, mid + out.delta / 3.0, d, cache);
    out.rod_b = make_rod(gap + out.delta / 3.0, gap + out.delta / 2.0, d, cache);
    out.a = out.rod_a->length_value();
    out.b = out.rod_b->length_value();
    if (!lemma4_bounds_check(iv, out.a, out.b))
      fail(ErrorCode::InvalidInterval, "constructed rod lengths violate the apex bounds");
    return out;
  };

  params.uu = build({ch(2.0 * kPi / 3.0 - eps / 2.0), ch(2.0 * kPi / 3.0),
                     ch(2.0 * kPi / 3.0), ch(2.0 * kPi / 3.0 + eps / 2.0)});
  params.uv = build({ch(kPi / 3.0 - eps), ch(kPi / 3.0 - eps / 2.0), 2.0 * c.r0,
                     std::nullopt});
  params.vv = build({ch(5.0 * eps / 2.0), ch(2.0 * kPi / 3.0 - eps), 2.0 * c.r0,
                     std::nullopt});
  return params;
}

const char* role_kind_name(VertexRole::Kind kind) {
  switch (kind) {
    case VertexRole::Kind::K: return "K";
    case VertexRole::Kind::U: return "U";
    case VertexRole::Kind::V: return "V";
    case VertexRole::Kind::AuxUU: return "AuxUU";
    case VertexRole::Kind::AuxVU: return "AuxVU";
    case VertexRole::Kind::AuxVV: return "AuxVV";
  }
  return "Unknown";
}

VertexId ReductionInstance::u_vertex(std::uint32_t i) const {
  return static_cast<VertexId>(params.d - 1 + i);
}
VertexId ReductionInstance::v_vertex(std::uint32_t i) const {
  return static_cast<VertexId>(params.d + 2 + i);
}
VertexId ReductionInstance::aux_uu_vertex(std::uint32_t pair_index) const {
  return static_cast<VertexId>(params.d + 2 + source.vertex_count + pair_index);
}
VertexId ReductionInstance::aux_vu_vertex(std::uint32_t v, std::uint32_t u) const {
  return static_cast<VertexId>(params.d + 5 + source.vertex_count + 3 * v + u);
}
VertexId ReductionInstance::aux_vv_vertex(std::uint32_t edge_index) const {
  return static_cast<VertexId>(params.d + 5 + 4 * source.vertex_count + edge_index);
}

ReductionInstance build_reduction(const SimpleGraph& g, int d, RodCache* cache) {
  dimension_constants(d);
  ReductionInstance inst;
  inst.params = reduction_params(d, cache);
  inst.source = g;

  const auto n = static_cast<std::uint32_t>(g.vertex_count);
  const auto m = static_cast<std::uint32_t>(g.edges.size());
  const std::size_t total = (d - 1) + 3 + n + (3 + 3 * static_cast<std::size_t>(n) + m);

  inst.roles.resize(total);
  for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(d); ++i)
    inst.roles[i] = {VertexRole::Kind::K, i, 0};
  for (std::uint32_t i = 0; i < 3; ++i)
    inst.roles[inst.u_vertex(i)] = {VertexRole::Kind::U, i, 0};
  for (std::uint32_t i = 0; i < n; ++i)
    inst.roles[inst.v_vertex(i)] = {VertexRole::Kind::V, i, 0};
  const std::uint32_t uu_pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::uint32_t p = 0; p < 3; ++p)
    inst.roles[inst.aux_uu_vertex(p)] = {VertexRole::Kind::AuxUU, uu_pairs[p][0],
                                         uu_pairs[p][1]};
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t u = 0; u < 3; ++u)
      inst.roles[inst.aux_vu_vertex(v, u)] = {VertexRole::Kind::AuxVU, v, u};
  for (std::uint32_t e = 0; e < m; ++e)
    inst.roles[inst.aux_vv_vertex(e)] = {VertexRole::Kind::AuxVV, g.edges[e].first,
                                         g.edges[e].second};

  EdgeList edges;
  for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(d - 1); ++i)
    for (std::uint32_t j = i + 1; j + 1 < static_cast<std::uint32_t>(d); ++j)
      edges.emplace_back(i, j, 1.0);
  for (std::uint32_t u = 0; u < 3; ++u)
    for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(d); ++i)
      edges.emplace_back(inst.u_vertex(u), i, 1.0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(d); ++i)
      edges.emplace_back(inst.v_vertex(v), i, 1.0);
  for (std::uint32_t p = 0; p < 3; ++p) {
    edges.emplace_back(inst.u_vertex(uu_pairs[p][0]), inst.aux_uu_vertex(p),
                       inst.params.uu.a);
    edges.emplace_back(inst.aux_uu_vertex(p), inst.u_vertex(uu_pairs[p][1]),
                       inst.params.uu.b);
  }
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t u = 0; u < 3; ++u) {
      edges.emplace_back(inst.v_vertex(v), inst.aux_vu_vertex(v, u), inst.params.uv.a);
      edges.emplace_back(inst.aux_vu_vertex(v, u), inst.u_vertex(u), inst.params.uv.b);
    }
  for (std::uint32_t e = 0; e < m; ++e) {
    edges.emplace_back(inst.v_vertex(g.edges[e].first), inst.aux_vv_vertex(e),
                       inst.params.vv.a);
    edges.emplace_back(inst.aux_vv_vertex(e), inst.v_vertex(g.edges[e].second),
                       inst.params.vv.b);
  }

  inst.h = build_graph(total, edges);
  return inst;
}

namespace {

// Which rod realizes a non-unit H edge, from the endpoint roles.
const RodCertificate* rod_for_edge(const ReductionInstance& inst, const Edge& e) {
  const VertexRole ru = inst.roles[e.u];
  const VertexRole rv = inst.roles[e.v];
  const VertexRole& aux = (ru.kind == VertexRole::Kind::AuxUU ||
                           ru.kind == VertexRole::Kind::AuxVU ||
                           ru.kind == VertexRole::Kind::AuxVV)
                              ? ru
                              : rv;
  const VertexRole& other = (&aux == &ru) ? rv : ru;
  switch (aux.kind) {
    case VertexRole::Kind::AuxUU:
      return (other.kind == VertexRole::Kind::U && other.a == aux.a)
                 ? inst.params.uu.rod_a.get()
                 : inst.params.uu.rod_b.get();
    case VertexRole::Kind::AuxVU:
      return (other.kind == VertexRole::Kind::V) ? inst.params.uv.rod_a.get()
                                                 : inst.params.uv.rod_b.get();
    case VertexRole::Kind::AuxVV:
      return (other.kind == VertexRole::Kind::V && other.a == aux.a)
                 ? inst.params.vv.rod_a.get()
                 : inst.params.vv.rod_b.get();
    default:
      return nullptr;
  }
}

}  // namespace

ExpandedInstance expand_to_unit(const ReductionInstance& inst) {
  ExpandedInstance out;
  const std::size_t nh = inst.h.vertex_count();

  std::size_t extra_vertices = 0;
  std::size_t total_edges = 0;
  for (std::size_t i = 0; i < inst.h.edge_count(); ++i) {
    const Edge& e = inst.h.edges()[i];
    if (e.len == 1.0) {
      ++total_edges;
      continue;
    }
    const RodCertificate* rod = rod_for_edge(inst, e);
    if (!rod) fail(ErrorCode::RodUnavailable, "no rod for edge " + std::to_string(i));
    extra_vertices += rod->graph.vertex_count() - 2;
    total_edges += rod->graph.edge_count();
  }

  out.provenance.reserve(nh + extra_vertices);
  for (VertexId i = 0; i < nh; ++i) out.provenance.push_back({true, i, 0, 0});

  EdgeList edges;
  edges.reserve(total_edges);
  std::size_t next_id = nh;
  for (std::size_t i = 0; i < inst.h.edge_count(); ++i) {
    const Edge& e = inst.h.edges()[i];
    if (e.len == 1.0) {
      edges.emplace_back(e.u, e.v, 1.0);
      continue;
    }
    const RodCertificate* rod = rod_for_edge(inst, e);
    if (std::abs(rod->length_value() - e.len) > 1e-12)
      fail(ErrorCode::RodUnavailable, "cached rod length does not match edge");
    const std::size_t base = next_id;
    auto map_id = [&](VertexId x) -> VertexId {
      if (x == rod->u) return e.u;
      if (x == rod->v) return e.v;
      return static_cast<VertexId>(base + (x - 2));
    };
    for (const Edge& re : rod->graph.edges())
      edges.emplace_back(map_id(re.u), map_id(re.v), 1.0);
    const auto interior = static_cast<std::uint32_t>(rod->graph.vertex_count() - 2);
    for (std::uint32_t k = 0; k < interior; ++k)
      out.provenance.push_back({false, 0, i, k});
    next_id += interior;
    out.substituted_edges.push_back(i);
  }

  out.graph = build_graph(nh + extra_vertices, edges);
  return out;
}

}  // namespace udg
