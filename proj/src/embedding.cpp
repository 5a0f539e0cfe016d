#include "udg/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>

#include "udg/rng.hpp"

namespace udg {

namespace {

constexpr std::size_t kMaxStoredViolations = 100;

void record(VerificationReport& report, Violation v) {
  ++report.violation_count;
  if (report.violations.size() < kMaxStoredViolations) report.violations.push_back(v);
}

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Sine of the angle at the vertex opposite the triple's longest side (the
// middle vertex when the points are nearly collinear). Scale-free.
double middle_vertex_sine(const Eigen::MatrixXd& pts, VertexId a, VertexId b, VertexId c,
                          double min_side) {
  const double dab = (pts.col(a) - pts.col(b)).norm();
  const double dbc = (pts.col(b) - pts.col(c)).norm();
  const double dca = (pts.col(c) - pts.col(a)).norm();
  if (std::min({dab, dbc, dca}) <= min_side) return 1.0;  // coincidence handled by pair scan
  VertexId mid = c;                                       // opposite side ab
  if (dbc >= dab && dbc >= dca) mid = a;
  else if (dca >= dab && dca >= dbc) mid = b;
  VertexId p = (mid == a) ? b : a;
  VertexId q = (mid == c) ? b : c;
  const Eigen::VectorXd u = pts.col(p) - pts.col(mid);
  const Eigen::VectorXd v = pts.col(q) - pts.col(mid);
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  const double s2 = 1.0 - (uv * uv) / (uu * vv);
  return s2 <= 0.0 ? 0.0 : std::sqrt(s2);
}

struct PairScanResult {
  bool injective = true;
  bool unit_clean = true;
};

// Reports every pair closer than eps_sep and every non-adjacent pair within
// eps_sep of unit distance.
void scan_pair(const Eigen::MatrixXd& pts, VertexId i, VertexId j,
               const std::unordered_set<std::uint64_t>& adjacency, double eps_sep,
               VerificationReport& report, PairScanResult& out) {
  const double dist = (pts.col(i) - pts.col(j)).norm();
  if (dist <= eps_sep) {
    out.injective = false;
    record(report, {Violation::Kind::CoincidentPair, {i, j, j}, dist});
  }
  if (std::abs(dist - 1.0) <= eps_sep && !adjacency.count(pair_key(i, j))) {
    out.unit_clean = false;
    record(report, {Violation::Kind::NearUnitNonEdge, {i, j, j}, dist});
  }
}

// Exhaustive pair scan through a uniform grid; used for large d=3 point sets.
// Enumerates exactly the cell offsets that can contain a pair at distance
// <= eps_sep or within eps_sep of 1, so the result matches the O(n^2) loop.
void grid_pair_scan(const Eigen::MatrixXd& pts,
                    const std::unordered_set<std::uint64_t>& adjacency, double eps_sep,
                    VerificationReport& report, PairScanResult& out) {
  const std::size_t n = static_cast<std::size_t>(pts.cols());
  const double cell = std::max(0.04, 4.0 * eps_sep);
  Eigen::Vector3d lo = pts.topRows(3).rowwise().minCoeff();
  auto cell_of = [&](std::size_t i, int axis) {
    return static_cast<std::int64_t>(std::floor((pts(axis, i) - lo(axis)) / cell));
  };
  std::int64_t nx = 0, ny = 0, nz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    nx = std::max(nx, cell_of(i, 0) + 1);
    ny = std::max(ny, cell_of(i, 1) + 1);
    nz = std::max(nz, cell_of(i, 2) + 1);
  }
  auto flat = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    return (x * ny + y) * nz + z;
  };
  const std::size_t cells = static_cast<std::size_t>(nx * ny * nz);
  std::vector<std::uint32_t> start(cells + 1, 0);
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    ++start[static_cast<std::size_t>(flat(cell_of(i, 0), cell_of(i, 1), cell_of(i, 2))) + 1];
  for (std::size_t c = 0; c < cells; ++c) start[c + 1] += start[c];
  {
    std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = static_cast<std::size_t>(flat(cell_of(i, 0), cell_of(i, 1), cell_of(i, 2)));
      order[cursor[c]++] = static_cast<std::uint32_t>(i);
    }
  }

  // Offsets whose cell-to-cell distance range intersects [0, eps] or
  // [1 - eps, 1 + eps].
  std::vector<std::array<std::int32_t, 3>> offsets;
  const auto reach = static_cast<std::int32_t>(std::ceil((1.0 + eps_sep) / cell)) + 1;
  for (std::int32_t dx = -reach; dx <= reach; ++dx)
    for (std::int32_t dy = -reach; dy <= reach; ++dy)
      for (std::int32_t dz = -reach; dz <= reach; ++dz) {
        auto lo_axis = [&](std::int32_t d) {
          return d == 0 ? 0.0 : (std::abs(d) - 1) * cell;
        };
        auto hi_axis = [&](std::int32_t d) { return (std::abs(d) + 1) * cell; };
        const double lo2 = lo_axis(dx) * lo_axis(dx) + lo_axis(dy) * lo_axis(dy) +
                           lo_axis(dz) * lo_axis(dz);
        const double hi2 = hi_axis(dx) * hi_axis(dx) + hi_axis(dy) * hi_axis(dy) +
                           hi_axis(dz) * hi_axis(dz);
        const double lod = std::sqrt(lo2), hid = std::sqrt(hi2);
        const bool near_zero = lod <= eps_sep;
        const bool near_unit = lod <= 1.0 + eps_sep && hid >= 1.0 - eps_sep;
        if (near_zero || near_unit) offsets.push_back({dx, dy, dz});
      }

  for (std::size_t c = 0; c < cells; ++c) {
    if (start[c] == start[c + 1]) continue;
    const std::int64_t cz = static_cast<std::int64_t>(c) % nz;
    const std::int64_t cy = (static_cast<std::int64_t>(c) / nz) % ny;
    const std::int64_t cx = static_cast<std::int64_t>(c) / (nz * ny);
    for (const auto& off : offsets) {
      const std::int64_t bx = cx + off[0], by = cy + off[1], bz = cz + off[2];
      if (bx < 0 || by < 0 || bz < 0 || bx >= nx || by >= ny || bz >= nz) continue;
      const std::size_t b = static_cast<std::size_t>(flat(bx, by, bz));
      if (b < c || start[b] == start[b + 1]) continue;
      for (std::uint32_t ia = start[c]; ia < start[c + 1]; ++ia)
        for (std::uint32_t ib = (b == c ? ia + 1 : start[b]); ib < start[b + 1]; ++ib) {
          const VertexId i = order[ia], j = order[ib];
          const double dist = (pts.col(i) - pts.col(j)).norm();
          if (dist <= eps_sep) {
            out.injective = false;
            record(report, {Violation::Kind::CoincidentPair, {i, j, j}, dist});
          } else if (std::abs(dist - 1.0) <= eps_sep && !adjacency.count(pair_key(i, j))) {
            out.unit_clean = false;
            record(report, {Violation::Kind::NearUnitNonEdge, {i, j, j}, dist});
          }
        }
    }
  }
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(eps_len > 0.0) || !(eps_sep > 0.0) || !(eps_collinear > 0.0))
    fail(ErrorCode::BadInput, "tolerances must be strictly positive");
  if (!(eps_len < eps_sep))
    fail(ErrorCode::BadInput, "eps_len must be smaller than eps_sep");
}

const char* violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::EdgeLength: return "EdgeLength";
    case Violation::Kind::CoincidentPair: return "CoincidentPair";
    case Violation::Kind::NearUnitNonEdge: return "NearUnitNonEdge";
    case Violation::Kind::CollinearTriple: return "CollinearTriple";
  }
  return "Unknown";
}

double embedding_residual(const WeightedGraph& g, const Embedding& e) {
  if (e.count() < g.vertex_count())
    fail(ErrorCode::MissingVertexCoordinates,
         "embedding covers " + std::to_string(e.count()) + " of " +
             std::to_string(g.vertex_count()) + " vertices");
  const Eigen::MatrixXd& pts = e.points();
  double residual = 0.0;
  for (const Edge& ed : g.edges()) {
    const double dist = (pts.col(ed.u) - pts.col(ed.v)).norm();
    residual = std::max(residual, std::abs(dist - ed.len));
  }
  return residual;
}

VerificationReport classify_embedding(const WeightedGraph& g, const Embedding& e,
                                      const ToleranceConfig& tol) {
  tol.validate();
  if (e.count() < g.vertex_count())
    fail(ErrorCode::MissingVertexCoordinates, "embedding does not cover the graph");

  const std::size_t n = g.vertex_count();
  const Eigen::MatrixXd& pts = e.points();
  VerificationReport report;

  for (const Edge& ed : g.edges()) {
    const double dist = (pts.col(ed.u) - pts.col(ed.v)).norm();
    const double err = std::abs(dist - ed.len);
    report.residual = std::max(report.residual, err);
    if (err > tol.eps_len)
      record(report, {Violation::Kind::EdgeLength, {ed.u, ed.v, ed.v}, dist});
  }
  report.is_embedding = report.residual <= tol.eps_len;

  std::unordered_set<std::uint64_t> adjacency;
  adjacency.reserve(g.edge_count() * 2);
  for (const Edge& ed : g.edges()) adjacency.insert(pair_key(ed.u, ed.v));

  PairScanResult pairs;
  if (n > 3000 && e.dim() == 3) {
    grid_pair_scan(pts, adjacency, tol.eps_sep, report, pairs);
  } else {
    for (VertexId i = 0; i + 1 < n; ++i)
      for (VertexId j = i + 1; j < n; ++j)
        scan_pair(pts, i, j, adjacency, tol.eps_sep, report, pairs);
  }
  report.is_injective = pairs.injective;
  report.is_strict = report.is_embedding && pairs.unit_clean;

  bool triples_clean = true;
  auto check_triple = [&](VertexId a, VertexId b, VertexId c) {
    const double s = middle_vertex_sine(pts, a, b, c, tol.eps_sep);
    if (s <= tol.eps_collinear) {
      triples_clean = false;
      record(report, {Violation::Kind::CollinearTriple, {a, b, c}, s});
    }
  };
  if (n <= tol.triple_threshold) {
    for (VertexId a = 0; a + 2 < n; ++a)
      for (VertexId b = a + 1; b + 1 < n; ++b)
        for (VertexId c = b + 1; c < n; ++c) check_triple(a, b, c);
  } else {
    report.collinearity_sampled = true;
    RngStream rng(tol.sample_seed, n);
    for (std::size_t s = 0; s < tol.triple_samples; ++s) {
      const auto a = static_cast<VertexId>(rng.next_below(n));
      auto b = static_cast<VertexId>(rng.next_below(n));
      auto c = static_cast<VertexId>(rng.next_below(n));
      if (a == b || b == c || a == c) continue;
      check_triple(a, b, c);
    }
  }

  report.is_non_critical = report.is_strict && report.is_injective && triples_clean;
  return report;
}

}  // namespace udg
