#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "udg/embedding.hpp"
#include "udg/oracle.hpp"
#include "udg/reduction.hpp"
#include "udg/rod.hpp"
#include "udg/solver.hpp"

namespace udg::io {

using nlohmann::json;

// Weighted graphs: {"dim", "vertices", "edges": [{"u", "v", "len"}]}.
json graph_to_json(const WeightedGraph& g, int dim = 0);
WeightedGraph graph_from_json(const json& j);

json simple_graph_to_json(const SimpleGraph& g, int dim = 0);
SimpleGraph simple_graph_from_json(const json& j);

// Embeddings: {"dim", "coords": [[...], ...]} (full double precision).
json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);

json length_expr_to_json(const LengthExpr& expr);
LengthExpr length_expr_from_json(const json& j);

// Graph schema plus a "rod" block: terminals, expression tree, float
// length, construction trace (child rods inline).
json rod_to_json(const RodCertificate& rod);
RodPtr rod_from_json(const json& j);

// Instance: H graph + roles + params (scalar part; rods are rebuilt
// deterministically from (d) on load and checked against the stored floats).
json instance_to_json(const ReductionInstance& inst);
ReductionInstance instance_from_json(const json& j, RodCache* cache = &default_rod_cache());

json expanded_to_json(const ExpandedInstance& x);

json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

json solve_report_to_json(const SolveReport& report, bool include_embedding = true);
json verification_report_to_json(const VerificationReport& report);
json oracle_result_to_json(const OracleResult& result);
json end_to_end_report_to_json(const EndToEndReport& report);

/// DIMACS .col: "c" comments, "p edge n m" header, "e i j" 1-based edges.
/// Duplicate edges collapse with a warning; an edge-count mismatch warns.
SimpleGraph parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
SimpleGraph parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// FNV-1a 64-bit content digest, hex-encoded.
std::string digest_hex(const std::string& bytes);

struct ManifestInput {
  std::string path;
  std::string digest;
};

/// Everything needed to reproduce a run byte-exactly (given the same build).
json run_manifest(const std::string& command, const std::vector<ManifestInput>& inputs,
                  std::uint64_t seed, int dimension, const ToleranceConfig& tol);

constexpr const char* kToolVersion = "0.1.0";

}  // namespace udg::io
