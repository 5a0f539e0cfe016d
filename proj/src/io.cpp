#include "udg/io.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace udg::io {

json graph_to_json(const WeightedGraph& g, int dim) {
  json edges = json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"len", e.len}});
  return {{"dim", dim}, {"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const json& j) {
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  for (const json& e : j.at("edges"))
    edges.emplace_back(e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                       e.at("len").get<double>());
  return build_graph(j.at("vertices").get<std::size_t>(), edges);
}

json simple_graph_to_json(const SimpleGraph& g, int dim) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges)
    edges.push_back({{"u", a}, {"v", b}, {"len", 1.0}});
  return {{"dim", dim}, {"vertices", g.vertex_count}, {"edges", std::move(edges)}};
}

SimpleGraph simple_graph_from_json(const json& j) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const json& e : j.at("edges"))
    edges.emplace_back(e.at("u").get<VertexId>(), e.at("v").get<VertexId>());
  return make_simple_graph(j.at("vertices").get<std::size_t>(), std::move(edges));
}

json embedding_to_json(const Embedding& e) {
  json coords = json::array();
  for (std::size_t i = 0; i < e.count(); ++i) {
    json point = json::array();
    for (int r = 0; r < e.dim(); ++r) point.push_back(e.points()(r, i));
    coords.push_back(std::move(point));
  }
  return {{"dim", e.dim()}, {"coords", std::move(coords)}};
}

Embedding embedding_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const json& coords = j.at("coords");
  Embedding e(dim, coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].size() != static_cast<std::size_t>(dim))
      fail(ErrorCode::BadInput, "embedding point dimension mismatch");
    for (int r = 0; r < dim; ++r) e.points()(r, i) = coords[i][r].get<double>();
  }
  return e;
}

json length_expr_to_json(const LengthExpr& expr) {
  switch (expr.kind()) {
    case LengthExpr::Kind::Unit:
      return {{"kind", "unit"}};
    case LengthExpr::Kind::DPow:
      return {{"kind", "dpow"}, {"d", expr.dim()}, {"k", expr.power()}};
    case LengthExpr::Kind::Chord:
      return {{"kind", "chord"}, {"d", expr.dim()}, {"index", expr.index()}};
    case LengthExpr::Kind::Product: {
      json factors = json::array();
      for (const LengthExpr& f : expr.factors()) factors.push_back(length_expr_to_json(f));
      return {{"kind", "product"}, {"factors", std::move(factors)}};
    }
  }
  fail(ErrorCode::BadInput, "unknown expression kind");
}

LengthExpr length_expr_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit") return LengthExpr::unit();
  if (kind == "dpow") return LengthExpr::d_pow(j.at("d").get<int>(), j.at("k").get<int>());
  if (kind == "chord")
    return LengthExpr::chord_index(j.at("d").get<int>(), j.at("index").get<long>());
  if (kind == "product") {
    const json& factors = j.at("factors");
    if (factors.size() != 2) fail(ErrorCode::BadInput, "product arity must be 2");
    return LengthExpr::product(length_expr_from_json(factors[0]),
                               length_expr_from_json(factors[1]));
  }
  fail(ErrorCode::BadInput, "unknown expression kind '" + kind + "'");
}

namespace {

json trace_to_json(const RodTrace& tr) {
  switch (tr.kind) {
    case RodTrace::Kind::UnitEdge:
      return {{"kind", "unit_edge"}};
    case RodTrace::Kind::Spindle:
      return {{"kind", "spindle"}, {"d", tr.d}};
    case RodTrace::Kind::Multiply:
      return {{"kind", "multiply"},
              {"frame", rod_to_json(*tr.frame)},
              {"part", rod_to_json(*tr.part)}};
    case RodTrace::Kind::Lemma3:
      return {{"kind", "lemma3"},
              {"d", tr.d},
              {"path", tr.path},
              {"skeleton_vertices", tr.skeleton_vertices},
              {"skeleton_edges", tr.skeleton_edges},
              {"spindle", rod_to_json(*tr.spindle)}};
  }
  fail(ErrorCode::BadInput, "unknown trace kind");
}

RodTracePtr trace_from_json(const json& j) {
  auto tr = std::make_shared<RodTrace>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit_edge") {
    tr->kind = RodTrace::Kind::UnitEdge;
  } else if (kind == "spindle") {
    tr->kind = RodTrace::Kind::Spindle;
    tr->d = j.at("d").get<int>();
  } else if (kind == "multiply") {
    tr->kind = RodTrace::Kind::Multiply;
    tr->frame = rod_from_json(j.at("frame"));
    tr->part = rod_from_json(j.at("part"));
  } else if (kind == "lemma3") {
    tr->kind = RodTrace::Kind::Lemma3;
    tr->d = j.at("d").get<int>();
    tr->path = j.at("path").get<long>();
    tr->skeleton_vertices = j.at("skeleton_vertices").get<std::size_t>();
    tr->skeleton_edges = j.at("skeleton_edges").get<std::size_t>();
    tr->spindle = rod_from_json(j.at("spindle"));
  } else {
    fail(ErrorCode::BadInput, "unknown trace kind '" + kind + "'");
  }
  return tr;
}

}  // namespace

json rod_to_json(const RodCertificate& rod) {
  json j = graph_to_json(rod.graph);
  j["rod"] = {{"u", rod.u},
              {"v", rod.v},
              {"length", length_expr_to_json(rod.length)},
              {"length_value", rod.length_value()},
              {"trace", trace_to_json(*rod.trace)}};
  return j;
}

RodPtr rod_from_json(const json& j) {
  auto rod = std::make_shared<RodCertificate>();
  rod->graph = graph_from_json(j);
  const json& r = j.at("rod");
  rod->u = r.at("u").get<VertexId>();
  rod->v = r.at("v").get<VertexId>();
  rod->length = length_expr_from_json(r.at("length"));
  rod->trace = trace_from_json(r.at("trace"));
  if (std::abs(rod->length_value() - r.at("length_value").get<double>()) > 1e-12)
    fail(ErrorCode::BadInput, "rod length value does not match its expression");
  return rod;
}

namespace {

json apex_to_json(const ApexLengths& x) {
  json interval = {{"l", x.interval.l}, {"L", x.interval.L}, {"R", x.interval.R}};
  if (x.interval.r) interval["r"] = *x.interval.r;
  else interval["r"] = "unbounded";
  return {{"delta", x.delta}, {"a", x.a}, {"b", x.b}, {"interval", std::move(interval)}};
}

}  // namespace

json instance_to_json(const ReductionInstance& inst) {
  json roles = json::array();
  for (const VertexRole& role : inst.roles)
    roles.push_back({{"kind", role_kind_name(role.kind)}, {"a", role.a}, {"b", role.b}});
  return {{"graph", graph_to_json(inst.h, inst.params.d)},
          {"source", simple_graph_to_json(inst.source)},
          {"roles", std::move(roles)},
          {"params",
           {{"d", inst.params.d},
            {"epsilon", inst.params.epsilon},
            {"r0", inst.params.r0},
            {"uu", apex_to_json(inst.params.uu)},
            {"uv", apex_to_json(inst.params.uv)},
            {"vv", apex_to_json(inst.params.vv)}}}};
}

ReductionInstance instance_from_json(const json& j, RodCache* cache) {
  const SimpleGraph source = simple_graph_from_json(j.at("source"));
  const int d = j.at("params").at("d").get<int>();
  ReductionInstance inst = build_reduction(source, d, cache);

  // The rebuild is deterministic; cross-check the stored scalars and graph.
  const json& params = j.at("params");
  for (const char* key : {"uu", "uv", "vv"}) {
    const json& block = params.at(key);
    const ApexLengths& have = key[0] == 'u' && key[1] == 'u'   ? inst.params.uu
                              : key[0] == 'u' && key[1] == 'v' ? inst.params.uv
                                                               : inst.params.vv;
    if (std::abs(block.at("a").get<double>() - have.a) > 1e-12 ||
        std::abs(block.at("b").get<double>() - have.b) > 1e-12)
      fail(ErrorCode::BadInput, "instance params do not match deterministic rebuild");
  }
  const WeightedGraph stored = graph_from_json(j.at("graph"));
  if (stored.vertex_count() != inst.h.vertex_count() ||
      stored.edge_count() != inst.h.edge_count())
    fail(ErrorCode::BadInput, "instance graph does not match deterministic rebuild");
  return inst;
}

json expanded_to_json(const ExpandedInstance& x) {
  json provenance = json::array();
  for (const ProvenanceEntry& p : x.provenance) {
    if (p.original)
      provenance.push_back({{"h_vertex", p.h_vertex}});
    else
      provenance.push_back({{"h_edge", p.h_edge}, {"interior", p.interior_index}});
  }
  return {{"graph", graph_to_json(x.graph, 0)},
          {"substituted_edges", x.substituted_edges},
          {"provenance", std::move(provenance)}};
}

json coloring_to_json(const Coloring& c) {
  json colors = json::array();
  for (std::uint8_t v : c) colors.push_back(static_cast<int>(v));
  return {{"colors", std::move(colors)}};
}

Coloring coloring_from_json(const json& j) {
  Coloring c;
  for (const json& v : j.at("colors")) {
    const int val = v.get<int>();
    if (val < 0 || val > 2) fail(ErrorCode::BadInput, "color out of range");
    c.push_back(static_cast<std::uint8_t>(val));
  }
  return c;
}

json solve_report_to_json(const SolveReport& report, bool include_embedding) {
  json j = {{"verdict", verdict_name(report.verdict)},
            {"best_energy", report.best_energy},
            {"best_residual", report.best_residual},
            {"successes", report.successes},
            {"restart_energies", report.restart_energies},
            {"restart_residuals", report.restart_residuals},
            {"note",
             "NoEmbeddingFoundHeuristic is heuristic evidence, not a proof of "
             "non-embeddability"}};
  if (include_embedding) j["embedding"] = embedding_to_json(report.best);
  return j;
}

json verification_report_to_json(const VerificationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations)
    violations.push_back({{"kind", violation_kind_name(v.kind)},
                          {"ids", {v.ids[0], v.ids[1], v.ids[2]}},
                          {"measured", v.measured}});
  return {{"is_embedding", report.is_embedding},
          {"is_strict", report.is_strict},
          {"is_injective", report.is_injective},
          {"is_non_critical", report.is_non_critical},
          {"collinearity_sampled", report.collinearity_sampled},
          {"residual", report.residual},
          {"violation_count", report.violation_count},
          {"violations", std::move(violations)}};
}

json oracle_result_to_json(const OracleResult& result) {
  json j = {{"colorable", result.colorable}, {"colorings_tried", result.colorings_tried}};
  if (result.witness) j["witness"] = coloring_to_json(*result.witness);
  return j;
}

json end_to_end_report_to_json(const EndToEndReport& report) {
  return {{"colorable", report.colorable},
          {"consistent", report.consistent},
          {"witness_ok", report.witness_ok},
          {"roundtrip_ok", report.roundtrip_ok},
          {"all_candidates_rejected", report.all_candidates_rejected},
          {"candidates_checked", report.candidates_checked},
          {"solver_verdict", verdict_name(report.solver_verdict)},
          {"solver_best_energy", report.solver_best_energy},
          {"solver_best_residual", report.solver_best_residual},
          {"note", report.note}};
}

SimpleGraph parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& message) {
    if (warnings) warnings->push_back(message);
  };
  std::string line;
  bool got_header = false;
  std::size_t n = 0, declared_edges = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string format;
      ls >> format >> n >> declared_edges;
      if (!ls || (format != "edge" && format != "edges" && format != "col"))
        fail(ErrorCode::MalformedHeader, "bad problem line at " + std::to_string(line_no));
      got_header = true;
    } else if (tag == "e") {
      if (!got_header)
        fail(ErrorCode::MalformedHeader, "edge before header at " + std::to_string(line_no));
      long a = 0, b = 0;
      ls >> a >> b;
      if (!ls) fail(ErrorCode::BadInput, "bad edge line at " + std::to_string(line_no));
      if (a < 1 || b < 1 || a > static_cast<long>(n) || b > static_cast<long>(n))
        fail(ErrorCode::VertexOutOfRange, "edge endpoints at line " + std::to_string(line_no));
      if (a == b)
        fail(ErrorCode::InvalidInputGraph, "self-loop at line " + std::to_string(line_no));
      VertexId u = static_cast<VertexId>(a - 1), v = static_cast<VertexId>(b - 1);
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
    // other line types are ignored, as is common for .col readers
  }
  if (!got_header) fail(ErrorCode::MalformedHeader, "missing problem line");
  std::sort(edges.begin(), edges.end());
  const std::size_t before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() != before)
    warn("collapsed " + std::to_string(before - edges.size()) + " duplicate edge lines");
  if (edges.size() != declared_edges)
    warn("header declares " + std::to_string(declared_edges) + " edges, found " +
         std::to_string(edges.size()));
  return make_simple_graph(n, std::move(edges));
}

SimpleGraph parse_dimacs(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_dimacs(in, warnings);
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

json run_manifest(const std::string& command, const std::vector<ManifestInput>& inputs,
                  std::uint64_t seed, int dimension, const ToleranceConfig& tol) {
  json in = json::array();
  for (const ManifestInput& i : inputs)
    in.push_back({{"path", i.path}, {"digest", i.digest}});
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return {{"command", command},
          {"inputs", std::move(in)},
          {"seed", seed},
          {"dimension", dimension},
          {"tolerances",
           {{"eps_len", tol.eps_len},
            {"eps_sep", tol.eps_sep},
            {"eps_collinear", tol.eps_collinear}}},
          {"tool_version", kToolVersion},
          {"timestamp_ms",
           std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
}

}  // namespace udg::io
