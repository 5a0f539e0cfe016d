#pragma once

#include <cstdint>
#include <vector>

#include "udg/embedding.hpp"
#include "udg/graph.hpp"
#include "udg/rod.hpp"

namespace udg {

struct SolveConfig {
  int restarts = 20;
  int max_iters = 6000;  // first-order iteration budget per restart
  double init_box = 0.0;  // half-width of the init cube; 0 = 1.5 * max edge length
  double success_residual = 1e-9;
  double fail_energy_floor = 1e-6;  // advisory; reported, never asserted
  std::uint64_t seed = 1;
  int threads = 1;
  int relax_dims = 1;  // extra coordinates during the unfolding phase

  void validate() const;
};

enum class Verdict : std::uint8_t { EmbeddingFound, NoEmbeddingFoundHeuristic };

const char* verdict_name(Verdict verdict);

struct SolveReport {
  Embedding best;
  double best_energy = 0.0;
  double best_residual = 0.0;
  std::vector<double> restart_energies;
  std::vector<double> restart_residuals;
  int successes = 0;
  Verdict verdict = Verdict::NoEmbeddingFoundHeuristic;
};

/// Sum over edges of (|x_u - x_v|^2 - w^2)^2; zero exactly at embeddings.
double energy(const WeightedGraph& g, const Eigen::MatrixXd& coords);

/// Analytic gradient of energy, shaped like the coordinates.
Eigen::MatrixXd energy_gradient(const WeightedGraph& g, const Eigen::MatrixXd& coords);

/// Multi-restart descent. Each restart starts from a seed-derived uniform
/// cube in d + relax_dims coordinates, unfolds there, compresses the extra
/// coordinates with a quadratic penalty ladder, then polishes in R^d with
/// damped Gauss-Newton steps. Deterministic for a fixed seed; restarts are
/// independent (threads > 1 parallelizes them without changing results).
SolveReport solve(const WeightedGraph& g, int dim, const SolveConfig& cfg);

struct RodPropertyReport {
  int requested = 0;
  int successes = 0;
  int attempts = 0;
  double target_length = 0.0;
  double min_terminal = 0.0;
  double max_terminal = 0.0;
  double max_deviation = 0.0;
  bool passed = false;
};

/// Empirical rod test: solves rod.graph (terminals unconstrained) until the
/// required number of restarts succeed, then checks every successful
/// embedding's terminal distance against rod.length. cfg.restarts bounds the
/// total attempts; throws InsufficientSuccesses if they run out.
RodPropertyReport rod_property_check(const RodCertificate& rod, int dim,
                                     SolveConfig cfg, int required_successes = 20,
                                     double terminal_tol = 1e-6);

}  // namespace udg
