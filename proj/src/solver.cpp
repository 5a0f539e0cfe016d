#include "udg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "udg/rng.hpp"

namespace udg {

namespace {

constexpr int kMaxDims = 16;

struct EdgeArrays {
  std::vector<std::uint32_t> u;
  std::vector<std::uint32_t> v;
  std::vector<double> w2;
  std::vector<double> w;

  explicit EdgeArrays(const WeightedGraph& g) {
    u.reserve(g.edge_count());
    v.reserve(g.edge_count());
    w2.reserve(g.edge_count());
    w.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
      u.push_back(e.u);
      v.push_back(e.v);
      w.push_back(e.len);
      w2.push_back(e.len * e.len);
    }
  }
};

// Energy and gradient over flat column-major coordinates (dims x n).
// The lambda term penalizes coordinates beyond base_dims.
double eval(const EdgeArrays& ea, const double* x, double* grad, int dims,
            std::size_t n, int base_dims, double lambda) {
  const std::size_t m = ea.u.size();
  const std::size_t total = dims * n;
  if (grad) std::fill(grad, grad + total, 0.0);
  double energy = 0.0;
  double delta[kMaxDims];
  for (std::size_t e = 0; e < m; ++e) {
    const double* xu = x + static_cast<std::size_t>(ea.u[e]) * dims;
    const double* xv = x + static_cast<std::size_t>(ea.v[e]) * dims;
    double s = -ea.w2[e];
    for (int r = 0; r < dims; ++r) {
      delta[r] = xu[r] - xv[r];
      s += delta[r] * delta[r];
    }
    energy += s * s;
    if (grad) {
      const double c = 4.0 * s;
      double* gu = grad + static_cast<std::size_t>(ea.u[e]) * dims;
      double* gv = grad + static_cast<std::size_t>(ea.v[e]) * dims;
      for (int r = 0; r < dims; ++r) {
        gu[r] += c * delta[r];
        gv[r] -= c * delta[r];
      }
    }
  }
  if (lambda > 0.0 && dims > base_dims) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = x + i * dims;
      double* gi = grad ? grad + i * dims : nullptr;
      for (int r = base_dims; r < dims; ++r) {
        energy += lambda * xi[r] * xi[r];
        if (gi) gi[r] += 2.0 * lambda * xi[r];
      }
    }
  }
  return energy;
}

double max_edge_residual(const EdgeArrays& ea, const double* x, int dims) {
  const std::size_t m = ea.u.size();
  double worst = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const double* xu = x + static_cast<std::size_t>(ea.u[e]) * dims;
    const double* xv = x + static_cast<std::size_t>(ea.v[e]) * dims;
    double s = 0.0;
    for (int r = 0; r < dims; ++r) {
      const double dr = xu[r] - xv[r];
      s += dr * dr;
    }
    worst = std::max(worst, std::abs(std::sqrt(s) - ea.w[e]));
  }
  return worst;
}

// Bounded-memory BFGS with Armijo backtracking. Returns the reached energy.
double lbfgs(const EdgeArrays& ea, std::vector<double>& x, int dims, std::size_t n,
             int base_dims, double lambda, int max_iters, double grad_tol) {
  const std::size_t total = dims * n;
  constexpr int kHistory = 10;
  std::vector<std::vector<double>> s_hist, y_hist;
  std::vector<double> rho;

  std::vector<double> grad(total), new_grad(total), direction(total), x_new(total);
  double f = eval(ea, x.data(), grad.data(), dims, n, base_dims, lambda);

  for (int iter = 0; iter < max_iters; ++iter) {
    double gmax = 0.0;
    for (double gi : grad) gmax = std::max(gmax, std::abs(gi));
    if (gmax < grad_tol) break;

    // two-loop recursion
    std::copy(grad.begin(), grad.end(), direction.begin());
    const int h = static_cast<int>(s_hist.size());
    std::vector<double> alpha(h);
    for (int i = h - 1; i >= 0; --i) {
      double dot = 0.0;
      for (std::size_t t = 0; t < total; ++t) dot += s_hist[i][t] * direction[t];
      alpha[i] = rho[i] * dot;
      for (std::size_t t = 0; t < total; ++t) direction[t] -= alpha[i] * y_hist[i][t];
    }
    if (h > 0) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t t = 0; t < total; ++t) {
        sy += s_hist[h - 1][t] * y_hist[h - 1][t];
        yy += y_hist[h - 1][t] * y_hist[h - 1][t];
      }
      const double gamma = (yy > 0.0) ? sy / yy : 1.0;
      for (double& v : direction) v *= gamma;
    }
    for (int i = 0; i < h; ++i) {
      double dot = 0.0;
      for (std::size_t t = 0; t < total; ++t) dot += y_hist[i][t] * direction[t];
      const double beta = rho[i] * dot;
      for (std::size_t t = 0; t < total; ++t)
        direction[t] += (alpha[i] - beta) * s_hist[i][t];
    }

    double descent = 0.0;
    for (std::size_t t = 0; t < total; ++t) descent += grad[t] * direction[t];
    if (!(descent > 0.0)) {
      // fall back to steepest descent
      std::copy(grad.begin(), grad.end(), direction.begin());
      descent = 0.0;
      for (double gi : grad) descent += gi * gi;
      if (!(descent > 0.0)) break;
    }

    // Armijo backtracking, accepted steps only
    double step = (h == 0) ? 1.0 / std::max(1.0, std::sqrt(descent)) : 1.0;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t t = 0; t < total; ++t) x_new[t] = x[t] - step * direction[t];
      f_new = eval(ea, x_new.data(), nullptr, dims, n, base_dims, lambda);
      if (f_new <= f - 1e-4 * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    eval(ea, x_new.data(), new_grad.data(), dims, n, base_dims, lambda);
    std::vector<double> s_vec(total), y_vec(total);
    double sy = 0.0;
    for (std::size_t t = 0; t < total; ++t) {
      s_vec[t] = x_new[t] - x[t];
      y_vec[t] = new_grad[t] - grad[t];
      sy += s_vec[t] * y_vec[t];
    }
    if (sy > 1e-14) {
      if (static_cast<int>(s_hist.size()) == kHistory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho.erase(rho.begin());
      }
      s_hist.push_back(std::move(s_vec));
      y_hist.push_back(std::move(y_vec));
      rho.push_back(1.0 / sy);
    }
    x.swap(x_new);
    grad.swap(new_grad);
    const double improvement = f - f_new;
    f = f_new;
    if (improvement < 1e-17 * std::max(1.0, f)) break;
  }
  return f;
}

// Damped Gauss-Newton on the squared-distance residuals r_e = |d_e|^2 - w^2,
// normal equations solved matrix-free by conjugate gradients.
void lm_polish(const EdgeArrays& ea, std::vector<double>& x, int dims, std::size_t n,
               double target_residual, int max_outer) {
  const std::size_t total = dims * n;
  const std::size_t m = ea.u.size();
  if (m == 0) return;

  std::vector<double> r(m), jp(m), grad(total), p(total), ap(total), z(total), cg_r(total),
      x_new(total);

  auto residuals = [&](const std::vector<double>& xx, std::vector<double>& out) {
    double energy = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double* xu = xx.data() + static_cast<std::size_t>(ea.u[e]) * dims;
      const double* xv = xx.data() + static_cast<std::size_t>(ea.v[e]) * dims;
      double s = -ea.w2[e];
      for (int rr = 0; rr < dims; ++rr) {
        const double dr = xu[rr] - xv[rr];
        s += dr * dr;
      }
      out[e] = s;
      energy += s * s;
    }
    return energy;
  };

  auto apply_jt = [&](const std::vector<double>& q, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      const double c = 2.0 * q[e];
      const double* xu = x.data() + static_cast<std::size_t>(ea.u[e]) * dims;
      const double* xv = x.data() + static_cast<std::size_t>(ea.v[e]) * dims;
      double* ou = out.data() + static_cast<std::size_t>(ea.u[e]) * dims;
      double* ov = out.data() + static_cast<std::size_t>(ea.v[e]) * dims;
      for (int rr = 0; rr < dims; ++rr) {
        const double dr = xu[rr] - xv[rr];
        ou[rr] += c * dr;
        ov[rr] -= c * dr;
      }
    }
  };

  auto apply_j = [&](const std::vector<double>& pp, std::vector<double>& out) {
    for (std::size_t e = 0; e < m; ++e) {
      const double* xu = x.data() + static_cast<std::size_t>(ea.u[e]) * dims;
      const double* xv = x.data() + static_cast<std::size_t>(ea.v[e]) * dims;
      const double* pu = pp.data() + static_cast<std::size_t>(ea.u[e]) * dims;
      const double* pv = pp.data() + static_cast<std::size_t>(ea.v[e]) * dims;
      double acc = 0.0;
      for (int rr = 0; rr < dims; ++rr) acc += 2.0 * (xu[rr] - xv[rr]) * (pu[rr] - pv[rr]);
      out[e] = acc;
    }
  };

  double energy = residuals(x, r);
  double mu = 1e-8;
  for (int outer = 0; outer < max_outer; ++outer) {
    if (max_edge_residual(ea, x.data(), dims) <= target_residual) return;

    apply_jt(r, grad);  // gradient of 0.5 sum r^2 w.r.t. x (up to factor)
    // CG on (J^T J + mu I) delta = -J^T r
    std::vector<double> delta(total, 0.0);
    std::copy(grad.begin(), grad.end(), cg_r.begin());
    for (double& vv : cg_r) vv = -vv;
    std::copy(cg_r.begin(), cg_r.end(), p.begin());
    double rs_old = 0.0;
    for (double vv : cg_r) rs_old += vv * vv;
    const double rs_init = rs_old;
    for (int cg = 0; cg < 80 && rs_old > 1e-6 * rs_init && rs_old > 1e-300; ++cg) {
      apply_j(p, jp);
      apply_jt(jp, ap);
      for (std::size_t t = 0; t < total; ++t) ap[t] += mu * p[t];
      double pap = 0.0;
      for (std::size_t t = 0; t < total; ++t) pap += p[t] * ap[t];
      if (!(pap > 0.0)) break;
      const double alpha = rs_old / pap;
      for (std::size_t t = 0; t < total; ++t) {
        delta[t] += alpha * p[t];
        cg_r[t] -= alpha * ap[t];
      }
      double rs_new = 0.0;
      for (double vv : cg_r) rs_new += vv * vv;
      for (std::size_t t = 0; t < total; ++t) p[t] = cg_r[t] + (rs_new / rs_old) * p[t];
      rs_old = rs_new;
    }

    for (std::size_t t = 0; t < total; ++t) x_new[t] = x[t] + delta[t];
    std::vector<double> r_new(m);
    const double energy_new = residuals(x_new, r_new);
    if (energy_new < energy) {
      x.swap(x_new);
      r.swap(r_new);
      energy = energy_new;
      mu = std::max(mu * 0.3, 1e-14);
    } else {
      mu *= 5.0;
      if (mu > 1e8) return;
    }
  }
}

struct RestartResult {
  std::vector<double> coords;  // d x n column-major
  double energy = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
};

RestartResult run_restart(const EdgeArrays& ea, std::size_t n, int d,
                          const SolveConfig& cfg, int restart_index) {
  RngStream rng(cfg.seed, static_cast<std::uint64_t>(restart_index));
  const int relax = (n > 3 && !ea.u.empty()) ? cfg.relax_dims : 0;
  const int dims = std::min(d + relax, kMaxDims);
  const double box = cfg.init_box;

  std::vector<double> x(static_cast<std::size_t>(dims) * n);
  for (double& v : x) v = rng.uniform(-box, box);

  const int budget = std::max(cfg.max_iters, 10);
  if (dims > d) {
    lbfgs(ea, x, dims, n, d, 0.0, budget * 30 / 100, 1e-12);
    for (double lambda : {0.03, 0.3, 3.0, 30.0, 300.0})
      lbfgs(ea, x, dims, n, d, lambda, budget * 7 / 100, 1e-12);
    // project out the relaxed coordinates
    std::vector<double> xd(static_cast<std::size_t>(d) * n);
    for (std::size_t i = 0; i < n; ++i)
      for (int r = 0; r < d; ++r) xd[i * d + r] = x[i * dims + r];
    x.swap(xd);
  }
  lbfgs(ea, x, d, n, d, 0.0, budget * 35 / 100, 1e-13);
  lm_polish(ea, x, d, n, cfg.success_residual, 60);

  RestartResult result;
  result.energy = eval(ea, x.data(), nullptr, d, n, d, 0.0);
  result.residual = ea.u.empty() ? 0.0 : max_edge_residual(ea, x.data(), d);
  result.coords = std::move(x);
  return result;
}

Embedding to_embedding(const std::vector<double>& coords, int d, std::size_t n) {
  Eigen::MatrixXd pts(d, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (int r = 0; r < d; ++r) pts(r, static_cast<Eigen::Index>(i)) = coords[i * d + r];
  return Embedding(std::move(pts));
}

}  // namespace

void SolveConfig::validate() const {
  if (restarts < 1) fail(ErrorCode::BadInput, "restarts must be >= 1");
  if (!(success_residual < fail_energy_floor))
    fail(ErrorCode::BadInput, "success_residual must be below fail_energy_floor");
  if (relax_dims < 0 || relax_dims > 8) fail(ErrorCode::BadInput, "relax_dims out of range");
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::EmbeddingFound: return "EmbeddingFound";
    case Verdict::NoEmbeddingFoundHeuristic: return "NoEmbeddingFoundHeuristic";
  }
  return "Unknown";
}

double energy(const WeightedGraph& g, const Eigen::MatrixXd& coords) {
  if (static_cast<std::size_t>(coords.cols()) < g.vertex_count())
    fail(ErrorCode::MissingVertexCoordinates, "coordinates do not cover the graph");
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const double s = (coords.col(e.u) - coords.col(e.v)).squaredNorm() - e.len * e.len;
    total += s * s;
  }
  return total;
}

Eigen::MatrixXd energy_gradient(const WeightedGraph& g, const Eigen::MatrixXd& coords) {
  if (static_cast<std::size_t>(coords.cols()) < g.vertex_count())
    fail(ErrorCode::MissingVertexCoordinates, "coordinates do not cover the graph");
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(coords.rows(), coords.cols());
  for (const Edge& e : g.edges()) {
    const Eigen::VectorXd delta = coords.col(e.u) - coords.col(e.v);
    const double s = delta.squaredNorm() - e.len * e.len;
    grad.col(e.u) += 4.0 * s * delta;
    grad.col(e.v) -= 4.0 * s * delta;
  }
  return grad;
}

SolveReport solve(const WeightedGraph& g, int dim, const SolveConfig& cfg_in) {
  SolveConfig cfg = cfg_in;
  cfg.validate();
  if (dim < 1) fail(ErrorCode::BadInput, "solve dimension must be >= 1");
  if (cfg.init_box <= 0.0) {
    double max_len = 1.0;
    for (const Edge& e : g.edges()) max_len = std::max(max_len, e.len);
    cfg.init_box = 1.5 * max_len;
  }

  const EdgeArrays ea(g);
  const std::size_t n = g.vertex_count();

  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) results[r] = run_restart(ea, n, dim, cfg, r);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mx;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t r;
          {
            std::lock_guard<std::mutex> lock(mx);
            if (next >= results.size()) return;
            r = next++;
          }
          results[r] = run_restart(ea, n, dim, cfg, static_cast<int>(r));
        }
      });
    for (auto& th : pool) th.join();
  }

  SolveReport report;
  report.restart_energies.reserve(results.size());
  report.restart_residuals.reserve(results.size());
  std::size_t best_index = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    report.restart_energies.push_back(results[r].energy);
    report.restart_residuals.push_back(results[r].residual);
    if (results[r].residual <= cfg.success_residual) ++report.successes;
    if (results[r].residual < results[best_index].residual) best_index = r;
  }
  report.best = to_embedding(results[best_index].coords, dim, n);
  report.best_energy = results[best_index].energy;
  report.best_residual = results[best_index].residual;
  report.verdict = report.best_residual <= cfg.success_residual
                       ? Verdict::EmbeddingFound
                       : Verdict::NoEmbeddingFoundHeuristic;
  return report;
}

RodPropertyReport rod_property_check(const RodCertificate& rod, int dim, SolveConfig cfg,
                                     int required_successes, double terminal_tol) {
  cfg.validate();
  const EdgeArrays ea(rod.graph);
  const std::size_t n = rod.graph.vertex_count();
  if (cfg.init_box <= 0.0) cfg.init_box = 1.5;  // unit rods

  RodPropertyReport report;
  report.requested = required_successes;
  report.target_length = rod.length_value();
  report.min_terminal = std::numeric_limits<double>::infinity();
  report.max_terminal = -std::numeric_limits<double>::infinity();

  const int threads = std::max(1, cfg.threads);
  int attempt = 0;
  std::mutex mx;
  while (report.successes < required_successes && attempt < cfg.restarts) {
    const int wave = std::min(std::max(threads, required_successes - report.successes),
                              cfg.restarts - attempt);
    std::vector<RestartResult> results(static_cast<std::size_t>(wave));
    if (threads == 1) {
      for (int i = 0; i < wave; ++i) results[i] = run_restart(ea, n, dim, cfg, attempt + i);
    } else {
      std::vector<std::thread> pool;
      int next = 0;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (;;) {
            int i;
            {
              std::lock_guard<std::mutex> lock(mx);
              if (next >= wave) return;
              i = next++;
            }
            results[i] = run_restart(ea, n, dim, cfg, attempt + i);
          }
        });
      for (auto& th : pool) th.join();
    }
    for (int i = 0; i < wave; ++i) {
      if (results[i].residual > cfg.success_residual) continue;
      ++report.successes;
      const double* xu = results[i].coords.data() + static_cast<std::size_t>(rod.u) * dim;
      const double* xv = results[i].coords.data() + static_cast<std::size_t>(rod.v) * dim;
      double s = 0.0;
      for (int r = 0; r < dim; ++r) s += (xu[r] - xv[r]) * (xu[r] - xv[r]);
      const double terminal = std::sqrt(s);
      report.min_terminal = std::min(report.min_terminal, terminal);
      report.max_terminal = std::max(report.max_terminal, terminal);
      report.max_deviation =
          std::max(report.max_deviation, std::abs(terminal - report.target_length));
    }
    attempt += wave;
  }
  report.attempts = attempt;
  if (report.successes < required_successes)
    fail(ErrorCode::InsufficientSuccesses,
         std::to_string(report.successes) + " of " + std::to_string(required_successes) +
             " successful solves within " + std::to_string(cfg.restarts) + " restarts");
  report.passed = report.max_deviation <= terminal_tol;
  return report;
}

}  // namespace udg
