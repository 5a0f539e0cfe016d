#pragma once

#include <cstdint>
#include <vector>

#include "udg/embedding.hpp"
#include "udg/geometry.hpp"
#include "udg/reduction.hpp"
#include "udg/rng.hpp"

namespace udg {

/// Color assignment, indexed by source-graph vertex id; values in {0, 1, 2}.
using Coloring = std::vector<std::uint8_t>;

/// Separation tolerances that a random construction on n vertices can
/// actually meet: the minimum |distance - 1| margin over ~n^2/2 generic
/// pairs shrinks like 1/n^2, so eps_sep steps down with size (never below
/// 1e-12, which still clears float noise by two orders). Also tightens the
/// triple sampling threshold so large-component checks stay affordable.
ToleranceConfig scaled_tolerances(std::size_t vertex_count, ToleranceConfig base = {});

/// Places K on a regular unit simplex centered at the origin, the anchors
/// u_0 u_1 u_2 on the orthogonal circle of radius r0 at mutual angle 2pi/3,
/// and each v_i evenly spaced (plus seed-derived micro-jitter) inside the
/// central half of the arc antipodal to its color's anchor. Returns the
/// embedding of the first (d-1) + 3 + n vertices in instance layout.
Embedding base_witness(const SimpleGraph& g, const Coloring& c, int d,
                       std::uint64_t seed = 0);

/// Point z with |z - p_v| = a and |z - p_u| = b at a uniformly random
/// rotation about the vu axis. Requires |a - b| < |p_v - p_u| < a + b.
Eigen::VectorXd place_apex(const Eigen::VectorXd& p_v, const Eigen::VectorXd& p_u,
                           double a, double b, RngStream& rng);

/// Non-critical embedding of the rod derived from its construction trace
/// (no solver involved). Randomness feeds the gluing rotations.
Embedding canonical_rod_embedding(const RodCertificate& rod, RngStream& rng,
                                  const ToleranceConfig& base_tol = {});

/// Canonical embedding rigidly moved so the terminals land on (p_u, p_v),
/// then rotated about the terminal axis by a random angle, retried until
/// the non-criticality check passes (at most 64 attempts).
Embedding glue_rod_embedding(const RodCertificate& rod, const Eigen::VectorXd& p_u,
                             const Eigen::VectorXd& p_v, RngStream& rng,
                             const ToleranceConfig& tol);

/// Full witness for H: base witness plus apex placements with rotation
/// retry; the result passes classify_embedding (embedding + non-critical).
Embedding witness_embedding(const ReductionInstance& inst, const Coloring& c,
                            std::uint64_t seed, const ToleranceConfig& tol = {});

/// Witness for the expanded unit-distance graph H': the H witness with every
/// substituted rod glued in. Checks use size-scaled tolerances when `tol` is
/// default-constructed.
Embedding witness_embedding(const ReductionInstance& inst, const ExpandedInstance& expanded,
                            const Coloring& c, std::uint64_t seed,
                            ToleranceConfig tol = {});

/// Reads a 3-coloring back from an embedding of H: centroid of K, the
/// orthogonal circle plane, angular positions, then the shortest-arc rule
/// (arc u0-u1 -> 2, arc u0-u2 -> 1, otherwise 0).
Coloring extract_coloring(const ReductionInstance& inst, const Embedding& e,
                          const ToleranceConfig& tol = {});

}  // namespace udg
