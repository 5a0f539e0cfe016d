#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "udg/reduction.hpp"
#include "udg/solver.hpp"
#include "udg/witness.hpp"

namespace udg {

struct OracleResult {
  bool colorable = false;
  std::optional<Coloring> witness;  // lexicographically smallest when colorable
  std::uint64_t colorings_tried = 0;  // partial assignments explored
};

/// True iff c is total on V_G and proper (c(i) != c(j) on every edge).
bool validate_coloring(const SimpleGraph& g, const Coloring& c);

/// Exhaustive 3-coloring via iterative backtracking with forward edge checks
/// and vertex 0 pinned to color 0 (color-class relabeling keeps both
/// colorability and the lexicographic minimum). Guarded at 25 vertices.
OracleResult brute_force_3color(const SimpleGraph& g);

struct EndToEndReport {
  bool colorable = false;
  bool consistent = false;
  bool witness_ok = false;        // embedding + non-critical (when colorable)
  bool roundtrip_ok = false;      // extracted coloring is proper (when colorable)
  bool all_candidates_rejected = false;  // when not colorable
  Verdict solver_verdict = Verdict::NoEmbeddingFoundHeuristic;
  double solver_best_energy = 0.0;
  double solver_best_residual = 0.0;
  std::uint64_t candidates_checked = 0;
  std::string note;  // labels heuristic evidence as such
};

/// Cross-checks the oracle against the reduction pipeline: a colorable G
/// must yield a verifiable witness embedding of H whose extracted coloring
/// is proper; a non-colorable G must have every candidate coloring rejected,
/// with the solver verdict on H recorded as heuristic evidence only.
EndToEndReport end_to_end_check(const SimpleGraph& g, int d, const SolveConfig& cfg,
                                RodCache* cache = &default_rod_cache());

}  // namespace udg
