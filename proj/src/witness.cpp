#include "udg/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "udg/oracle.hpp"

namespace udg {

namespace {

constexpr int kGlueRetries = 64;

Eigen::VectorXd axis_vector(int d, int axis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v(axis) = 1.0;
  return v;
}

// Spindle: two unit d-simplices K1+{A,B} and K2+{A,C} hinged at A, with the
// hinge angle fixed by |B - C| = 1. Clique orientations are randomized so a
// retry can break any accidental alignment.
Embedding canonical_spindle(int d, RngStream& rng) {
  const DimensionConstants c = dimension_constants(d);
  const Eigen::VectorXd n1 = axis_vector(d, d - 1);
  const double cos_t = 1.0 - 1.0 / (2.0 * c.D * c.D);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  Eigen::VectorXd n2 = cos_t * n1 + sin_t * axis_vector(d, 0);

  Eigen::MatrixXd basis1(d, d - 1);  // complement of n1
  basis1.setZero();
  basis1.topRows(d - 1).setIdentity();
  const Eigen::MatrixXd basis2 = geo::orthogonal_taking(n1, n2) * basis1;

  const Eigen::MatrixXd simplex = simplex_coordinates(d, 1.0);
  const Eigen::MatrixXd w1 = geo::random_orthogonal(d - 1, rng);
  const Eigen::MatrixXd w2 = geo::random_orthogonal(d - 1, rng);

  Embedding e(d, static_cast<std::size_t>(2 * d + 3));
  Eigen::MatrixXd& pts = e.points();
  pts.col(layout::kSpindleA).setZero();
  pts.col(layout::kSpindleB) = -c.D * n1;
  pts.col(layout::kSpindleC) = -c.D * n2;
  const Eigen::MatrixXd k1 = (basis1 * w1 * simplex).colwise() - c.h * n1;
  const Eigen::MatrixXd k2 = (basis2 * w2 * simplex).colwise() - c.h * n2;
  for (int i = 0; i < d; ++i) {
    pts.col(layout::kSpindleK1 + i) = k1.col(i);
    pts.col(layout::spindle_k2(d) + i) = k2.col(i);
  }
  return e;
}

Embedding canonical_lemma3(const RodCertificate& rod, RngStream& rng,
                           const ToleranceConfig& base_tol) {
  const RodTrace& tr = *rod.trace;
  const int d = tr.d;
  const long n_path = tr.path;
  const DimensionConstants c = dimension_constants(d);

  Embedding e(d, rod.graph.vertex_count());
  Eigen::MatrixXd& pts = e.points();

  // K on a regular unit simplex spanning rows 2..d-1, centered at the origin.
  if (d > 2) {
    const Eigen::MatrixXd simplex = simplex_coordinates(d - 1, 1.0);
    const Eigen::MatrixXd w = geo::random_orthogonal(d - 2, rng);
    const Eigen::MatrixXd placed = w * simplex;
    for (long j = 0; j < d - 1; ++j)
      pts.col(layout::lemma3_clique_vertex(j)).tail(d - 2) = placed.col(j);
  }

  // The circle vertices, one alpha step apart, at a random phase.
  const double phase = rng.uniform(0.0, kTwoPi);
  for (long i = 1; i <= n_path; ++i) {
    const double t = phase + static_cast<double>(i - 1) * c.alpha;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    p(0) = c.r0 * std::cos(t);
    p(1) = c.r0 * std::sin(t);
    pts.col(layout::lemma3_path_vertex(d, n_path, i)) = p;
  }

  // Glue a spindle into every skip pair (their distance is chord(2 alpha) = D).
  const ToleranceConfig spindle_tol =
      scaled_tolerances(tr.spindle->graph.vertex_count(), base_tol);
  for (long j = 0; j + 2 < n_path; ++j) {
    const Eigen::VectorXd pu = pts.col(layout::lemma3_path_vertex(d, n_path, j + 1));
    const Eigen::VectorXd pv = pts.col(layout::lemma3_path_vertex(d, n_path, j + 3));
    const Embedding sp = glue_rod_embedding(*tr.spindle, pu, pv, rng, spindle_tol);
    const std::size_t base = layout::lemma3_block_base(d, n_path, j);
    for (int k = 0; k < 2 * d + 1; ++k)
      pts.col(static_cast<Eigen::Index>(base + k)) = sp.points().col(2 + k);
  }
  return e;
}

Embedding canonical_multiply(const RodCertificate& rod, RngStream& rng,
                             const ToleranceConfig& base_tol) {
  const RodTrace& tr = *rod.trace;
  const RodCertificate& frame = *tr.frame;
  const RodCertificate& part = *tr.part;
  const double scale = part.length_value();

  Embedding frame_emb = canonical_rod_embedding(frame, rng, base_tol);
  Eigen::MatrixXd scaled = frame_emb.points() * scale;

  Embedding e(static_cast<int>(scaled.rows()), rod.graph.vertex_count());
  Eigen::MatrixXd& pts = e.points();
  pts.leftCols(scaled.cols()) = scaled;

  const ToleranceConfig part_tol = scaled_tolerances(part.graph.vertex_count(), base_tol);
  const std::size_t interior = part.graph.vertex_count() - 2;
  for (std::size_t j = 0; j < frame.graph.edge_count(); ++j) {
    const Edge host = frame.graph.edges()[j];
    const Embedding glued =
        glue_rod_embedding(part, scaled.col(host.u), scaled.col(host.v), rng, part_tol);
    const std::size_t base =
        layout::multiply_block_base(frame.graph.vertex_count(), part.graph.vertex_count(), j);
    for (std::size_t k = 0; k < interior; ++k)
      pts.col(static_cast<Eigen::Index>(base + k)) =
          glued.points().col(static_cast<Eigen::Index>(2 + k));
  }
  return e;
}

}  // namespace

ToleranceConfig scaled_tolerances(std::size_t n, ToleranceConfig base) {
  if (n > 2000) {
    base.eps_sep = 1e-8;
    base.eps_len = 1e-9;
  }
  if (n > 20000) base.eps_sep = 1e-10;
  if (n > 200000) base.eps_sep = 1e-12;
  base.eps_len = std::min(base.eps_len, base.eps_sep / 10.0);
  base.triple_threshold = std::min<std::size_t>(base.triple_threshold, 400);
  base.triple_samples = std::min<std::size_t>(base.triple_samples, 300000);
  return base;
}

Embedding base_witness(const SimpleGraph& g, const Coloring& c, int d,
                       std::uint64_t seed) {
  if (!validate_coloring(g, c))
    fail(ErrorCode::InvalidColoring, "base witness needs a proper 3-coloring");
  const DimensionConstants consts = dimension_constants(d);
  const double eps = kPi / 24.0;
  const auto n = g.vertex_count;

  Embedding e(d, static_cast<std::size_t>(d + 2) + n);
  Eigen::MatrixXd& pts = e.points();

  if (d > 2) {
    const Eigen::MatrixXd simplex = simplex_coordinates(d - 1, 1.0);
    for (int j = 0; j + 1 < d; ++j) pts.col(j).tail(d - 2) = simplex.col(j);
  }

  auto on_circle = [&](double theta) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    p(0) = consts.r0 * std::cos(theta);
    p(1) = consts.r0 * std::sin(theta);
    return p;
  };
  for (int u = 0; u < 3; ++u)
    pts.col(d - 1 + u) = on_circle(u * 2.0 * kPi / 3.0);

  // Evenly spread the color classes over the central halves of their arcs;
  // the jitter keeps accidental unit distances at measure zero.
  std::array<std::vector<std::size_t>, 3> classes;
  for (std::size_t i = 0; i < n; ++i) classes[c[i]].push_back(i);
  for (int color = 0; color < 3; ++color) {
    const double center = color * 2.0 * kPi / 3.0 + kPi;
    const auto& members = classes[color];
    const double slot = (eps / 2.0) / std::max<std::size_t>(members.size(), 1);
    for (std::size_t j = 0; j < members.size(); ++j) {
      RngStream jrng(seed, 0xb17 + members[j]);
      const double jitter = (jrng.uniform() - 0.5) * 2.0 * eps * 1e-6;
      const double offset = -eps / 4.0 + (static_cast<double>(j) + 0.5) * slot + jitter;
      pts.col(static_cast<Eigen::Index>(d + 2 + members[j])) = on_circle(center + offset);
    }
  }
  return e;
}

Eigen::VectorXd place_apex(const Eigen::VectorXd& p_v, const Eigen::VectorXd& p_u,
                           double a, double b, RngStream& rng) {
  const Eigen::VectorXd span = p_u - p_v;
  const double dist = span.norm();
  if (!(std::abs(a - b) < dist && dist < a + b))
    fail(ErrorCode::TriangleInfeasible,
         "|a-b| < |vu| < a+b violated: a=" + std::to_string(a) + " b=" +
             std::to_string(b) + " |vu|=" + std::to_string(dist));
  const Eigen::VectorXd axis = span / dist;
  const double t = (a * a - b * b + dist * dist) / (2.0 * dist);
  const double radius = std::sqrt(std::max(0.0, a * a - t * t));
  const Eigen::MatrixXd comp = geo::orthonormal_complement(axis);
  Eigen::VectorXd dir;
  if (comp.cols() == 1) {
    dir = comp.col(0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
  } else {
    // uniform direction on the sphere of the complement
    Eigen::VectorXd gauss(comp.cols());
    for (Eigen::Index k = 0; k < comp.cols(); ++k) gauss(k) = rng.gaussian();
    gauss.normalize();
    dir = comp * gauss;
  }
  return p_v + t * axis + radius * dir;
}

Embedding canonical_rod_embedding(const RodCertificate& rod, RngStream& rng,
                                  const ToleranceConfig& base_tol) {
  switch (rod.trace ? rod.trace->kind : RodTrace::Kind::UnitEdge) {
    case RodTrace::Kind::UnitEdge: {
      Embedding e(3, 2);
      e.points().col(1) = axis_vector(3, 0);
      return e;
    }
    case RodTrace::Kind::Spindle:
      return canonical_spindle(rod.trace->d, rng);
    case RodTrace::Kind::Lemma3:
      return canonical_lemma3(rod, rng, base_tol);
    case RodTrace::Kind::Multiply:
      return canonical_multiply(rod, rng, base_tol);
  }
  fail(ErrorCode::BadInput, "rod has no construction trace");
}

Embedding glue_rod_embedding(const RodCertificate& rod, const Eigen::VectorXd& p_u,
                             const Eigen::VectorXd& p_v, RngStream& rng,
                             const ToleranceConfig& tol) {
  const double target = (p_u - p_v).norm();
  if (std::abs(target - rod.length_value()) > 1e-9)
    fail(ErrorCode::LengthMismatch,
         "terminal distance " + std::to_string(target) + " vs rod length " +
             std::to_string(rod.length_value()));

  for (int attempt = 0; attempt < kGlueRetries; ++attempt) {
    Embedding emb = canonical_rod_embedding(rod, rng, tol);
    Eigen::MatrixXd& pts = emb.points();
    const Eigen::VectorXd qu = pts.col(rod.u);
    const Eigen::VectorXd qv = pts.col(rod.v);
    const Eigen::VectorXd from = (qv - qu) / (qv - qu).norm();
    const Eigen::VectorXd to = (p_v - p_u) / target;
    const Eigen::MatrixXd rot =
        geo::random_rotation_fixing_axis(to, rng) * geo::orthogonal_taking(from, to);
    pts = (rot * (pts.colwise() - qu)).colwise() + p_u;

    const VerificationReport report = classify_embedding(rod.graph, emb, tol);
    if (report.is_embedding && report.is_non_critical) return emb;
  }
  fail(ErrorCode::DegeneracyRetryExhausted,
       "no non-critical gluing rotation in " + std::to_string(kGlueRetries) +
           " attempts (tolerances too demanding for this size?)");
}

namespace {

// z against everything placed so far: separation, near-unit distance for
// non-adjacent pairs, and collinearity (sampled above the size threshold).
bool locally_clean(const Eigen::MatrixXd& pts, std::size_t placed, VertexId z,
                   const Eigen::VectorXd& cand, VertexId anchor1, VertexId anchor2,
                   const ToleranceConfig& tol, RngStream& rng) {
  for (std::size_t i = 0; i < placed; ++i) {
    if (i == z) continue;
    const double dist = (pts.col(i) - cand).norm();
    if (dist <= tol.eps_sep) return false;
    const bool adjacent = (i == anchor1 || i == anchor2);
    if (!adjacent && std::abs(dist - 1.0) <= tol.eps_sep) return false;
  }
  auto sine_at = [&](const Eigen::VectorXd& mid, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y) {
    const Eigen::VectorXd u = x - mid;
    const Eigen::VectorXd v = y - mid;
    const double s2 = 1.0 - std::pow(u.dot(v), 2) / (u.squaredNorm() * v.squaredNorm());
    return s2 <= 0.0 ? 0.0 : std::sqrt(s2);
  };
  auto triple_clean = [&](std::size_t i, std::size_t j) {
    if (i == z || j == z || i == j) return true;
    const Eigen::VectorXd a = pts.col(i), b = pts.col(j);
    const double dz_a = (cand - a).norm(), dz_b = (cand - b).norm(), d_ab = (a - b).norm();
    if (std::min({dz_a, dz_b, d_ab}) <= tol.eps_sep) return true;
    double sine;
    if (d_ab >= dz_a && d_ab >= dz_b) sine = sine_at(cand, a, b);
    else if (dz_a >= d_ab && dz_a >= dz_b) sine = sine_at(b, cand, a);
    else sine = sine_at(a, cand, b);
    return sine > tol.eps_collinear;
  };
  if (placed <= tol.triple_threshold) {
    for (std::size_t i = 0; i + 1 < placed; ++i)
      for (std::size_t j = i + 1; j < placed; ++j)
        if (!triple_clean(i, j)) return false;
  } else {
    for (std::size_t s = 0; s < 20000; ++s)
      if (!triple_clean(rng.next_below(placed), rng.next_below(placed))) return false;
  }
  return true;
}

}  // namespace

Embedding witness_embedding(const ReductionInstance& inst, const Coloring& c,
                            std::uint64_t seed, const ToleranceConfig& tol) {
  if (!validate_coloring(inst.source, c))
    fail(ErrorCode::InvalidColoring, "witness needs a proper 3-coloring of the source");
  const int d = inst.params.d;
  const std::size_t nh = inst.h.vertex_count();
  const std::size_t base_count = static_cast<std::size_t>(d + 2) + inst.source.vertex_count;

  Embedding base = base_witness(inst.source, c, d, seed);
  Embedding e(d, nh);
  e.points().leftCols(static_cast<Eigen::Index>(base_count)) = base.points();

  // Aux vertices one at a time, each re-rotated until locally non-critical.
  RngStream rng(seed, 0xa9);
  for (std::size_t z = base_count; z < nh; ++z) {
    const VertexRole role = inst.roles[z];
    VertexId first = 0, second = 0;
    double a = 0.0, b = 0.0;
    switch (role.kind) {
      case VertexRole::Kind::AuxUU:
        first = inst.u_vertex(role.a);
        second = inst.u_vertex(role.b);
        a = inst.params.uu.a;
        b = inst.params.uu.b;
        break;
      case VertexRole::Kind::AuxVU:
        first = inst.v_vertex(role.a);
        second = inst.u_vertex(role.b);
        a = inst.params.uv.a;
        b = inst.params.uv.b;
        break;
      case VertexRole::Kind::AuxVV:
        first = inst.v_vertex(role.a);
        second = inst.v_vertex(role.b);
        a = inst.params.vv.a;
        b = inst.params.vv.b;
        break;
      default:
        fail(ErrorCode::InvalidInputGraph, "unexpected non-aux vertex in aux block");
    }
    bool placed = false;
    for (int attempt = 0; attempt < kGlueRetries; ++attempt) {
      const Eigen::VectorXd cand =
          place_apex(e.points().col(first), e.points().col(second), a, b, rng);
      if (locally_clean(e.points(), z, static_cast<VertexId>(z), cand, first, second, tol,
                        rng)) {
        e.points().col(static_cast<Eigen::Index>(z)) = cand;
        placed = true;
        break;
      }
    }
    if (!placed)
      fail(ErrorCode::DegeneracyRetryExhausted,
           "apex rotation retries exhausted at vertex " + std::to_string(z));
  }

  const VerificationReport report = classify_embedding(inst.h, e, tol);
  if (!report.is_embedding || !report.is_non_critical)
    fail(ErrorCode::DegeneracyRetryExhausted, "witness failed final verification");
  return e;
}

Embedding witness_embedding(const ReductionInstance& inst, const ExpandedInstance& expanded,
                            const Coloring& c, std::uint64_t seed, ToleranceConfig tol) {
  const std::size_t total = expanded.graph.vertex_count();
  ToleranceConfig base_defaults;
  if (tol.eps_sep == base_defaults.eps_sep && tol.eps_len == base_defaults.eps_len)
    tol = scaled_tolerances(total, tol);

  const std::size_t nh = inst.h.vertex_count();
  const Embedding h_emb =
      witness_embedding(inst, c, seed, scaled_tolerances(nh, ToleranceConfig{}));

  for (int round = 0; round < 8; ++round) {
    Embedding e(inst.params.d, total);
    e.points().leftCols(static_cast<Eigen::Index>(nh)) = h_emb.points();

    std::size_t next_id = nh;
    for (std::size_t idx = 0; idx < expanded.substituted_edges.size(); ++idx) {
      const std::size_t edge_index = expanded.substituted_edges[idx];
      const Edge& he = inst.h.edges()[edge_index];
      const RodCertificate* rod = nullptr;
      // recover the rod from the recorded interior size
      for (const RodPtr& r : {inst.params.uu.rod_a, inst.params.uu.rod_b,
                              inst.params.uv.rod_a, inst.params.uv.rod_b,
                              inst.params.vv.rod_a, inst.params.vv.rod_b})
        if (std::abs(r->length_value() - he.len) <= 1e-12) rod = r.get();
      if (!rod) fail(ErrorCode::RodUnavailable, "no rod for substituted edge");

      RngStream rng(seed, 0xe0000 + (static_cast<std::uint64_t>(round) << 32) + idx);
      const ToleranceConfig rod_tol = scaled_tolerances(rod->graph.vertex_count(), tol);
      const Embedding glued = glue_rod_embedding(
          *rod, e.points().col(he.u), e.points().col(he.v), rng, rod_tol);
      const std::size_t interior = rod->graph.vertex_count() - 2;
      for (std::size_t k = 0; k < interior; ++k)
        e.points().col(static_cast<Eigen::Index>(next_id + k)) =
            glued.points().col(static_cast<Eigen::Index>(2 + k));
      next_id += interior;
    }

    const VerificationReport report = classify_embedding(expanded.graph, e, tol);
    if (report.is_embedding && report.is_non_critical) return e;
  }
  fail(ErrorCode::DegeneracyRetryExhausted, "expanded witness failed verification");
}

Coloring extract_coloring(const ReductionInstance& inst, const Embedding& e,
                          const ToleranceConfig& tol) {
  const int d = inst.params.d;
  if (e.count() < inst.h.vertex_count())
    fail(ErrorCode::MissingVertexCoordinates, "embedding does not cover H");
  const Eigen::MatrixXd& pts = e.points();

  // K must form a regular unit simplex (checked before the residual so a
  // degenerate K is reported as such).
  const double k_tol = std::max(1e-6, 10.0 * tol.eps_len);
  for (int i = 0; i + 2 < d; ++i)
    for (int j = i + 1; j + 1 < d; ++j)
      if (std::abs((pts.col(i) - pts.col(j)).norm() - 1.0) > k_tol)
        fail(ErrorCode::DegenerateK, "K vertices are not a unit simplex");

  Eigen::VectorXd center = Eigen::VectorXd::Zero(e.dim());
  for (int i = 0; i + 1 < d; ++i) center += pts.col(i);
  center /= static_cast<double>(d - 1);

  // Orthonormal basis of the 2-plane orthogonal to K's affine hull.
  Eigen::MatrixXd spread(e.dim(), d - 1);
  for (int i = 0; i + 1 < d; ++i) spread.col(i) = pts.col(i) - center;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(spread, Eigen::ComputeFullU);
  if (d > 2 && svd.singularValues()(d - 3) < 0.05)
    fail(ErrorCode::DegenerateK, "K affine hull is rank-deficient");
  const Eigen::VectorXd e1 = svd.matrixU().col(e.dim() - 2);
  const Eigen::VectorXd e2 = svd.matrixU().col(e.dim() - 1);

  if (embedding_residual(inst.h, e) > tol.eps_len)
    fail(ErrorCode::NotAnEmbedding, "residual exceeds eps_len");

  auto angle_of = [&](VertexId x) {
    const Eigen::VectorXd p = pts.col(x) - center;
    return std::atan2(p.dot(e2), p.dot(e1));
  };

  std::array<double, 3> u_angle;
  for (std::uint32_t u = 0; u < 3; ++u) u_angle[u] = angle_of(inst.u_vertex(u));

  // Sorted anchor angles cut the circle into three arcs; each is the
  // shortest arc between its endpoints (pairwise anchor angles < pi).
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return u_angle[x] < u_angle[y]; });

  Coloring colors(inst.source.vertex_count, 0);
  for (std::uint32_t i = 0; i < inst.source.vertex_count; ++i) {
    const double beta = angle_of(inst.v_vertex(i));
    int lo = order[2], hi = order[0];  // wrap-around arc by default
    if (beta >= u_angle[order[0]] && beta < u_angle[order[1]]) {
      lo = order[0];
      hi = order[1];
    } else if (beta >= u_angle[order[1]] && beta < u_angle[order[2]]) {
      lo = order[1];
      hi = order[2];
    }
    colors[i] = static_cast<std::uint8_t>(3 - lo - hi);
  }
  return colors;
}

}  // namespace udg
