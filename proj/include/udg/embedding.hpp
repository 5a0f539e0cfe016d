#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// Assignment of a point in R^d to each vertex; points are the columns of a
/// d x n matrix.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(Eigen::MatrixXd points) : points_(std::move(points)) {}
  Embedding(int dim, std::size_t n) : points_(Eigen::MatrixXd::Zero(dim, n)) {}

  int dim() const { return static_cast<int>(points_.rows()); }
  std::size_t count() const { return static_cast<std::size_t>(points_.cols()); }

  Eigen::MatrixXd& points() { return points_; }
  const Eigen::MatrixXd& points() const { return points_; }

  Eigen::VectorXd point(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }

 private:
  Eigen::MatrixXd points_;
};

/// Tolerances discretizing the exact embeddability conditions.
struct ToleranceConfig {
  double eps_len = 1e-9;        // max |distance - length| per edge
  double eps_sep = 1e-6;        // min pair separation; min |distance - 1| off-edges
  double eps_collinear = 1e-6;  // min sine of the angle at a triple's middle vertex

  // Above this vertex count the collinearity check switches to uniformly
  // sampled triples and the report is flagged as sampled.
  std::size_t triple_threshold = 2000;
  std::size_t triple_samples = 1000000;
  std::uint64_t sample_seed = 0x51ab5eedull;

  void validate() const;
};

struct Violation {
  enum class Kind : std::uint8_t {
    EdgeLength,
    CoincidentPair,
    NearUnitNonEdge,
    CollinearTriple,
  };
  Kind kind;
  std::array<VertexId, 3> ids;  // third slot unused for pair kinds
  double measured;
};

const char* violation_kind_name(Violation::Kind kind);

struct VerificationReport {
  bool is_embedding = false;
  bool is_strict = false;
  bool is_injective = false;
  bool is_non_critical = false;
  bool collinearity_sampled = false;
  double residual = 0.0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // capped at a fixed limit
};

/// Max over edges of |distance - length|; 0 for edgeless graphs.
double embedding_residual(const WeightedGraph& g, const Embedding& e);

/// Runs all verification predicates. Pair scans are exhaustive (internally
/// grid-accelerated for large d=3 point sets); the triple scan samples above
/// tol.triple_threshold.
VerificationReport classify_embedding(const WeightedGraph& g, const Embedding& e,
                                      const ToleranceConfig& tol = {});

}  // namespace udg
