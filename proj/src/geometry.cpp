#include "udg/geometry.hpp"

#include <cmath>

#include "udg/errors.hpp"

namespace udg {

Eigen::MatrixXd simplex_coordinates(int m, double edge) {
  if (m < 1) fail(ErrorCode::BadInput, "simplex needs at least one vertex");
  if (!(edge > 0.0)) fail(ErrorCode::NonPositiveLength, "simplex edge length");
  // Rows are the Helmert basis of the sum-zero hyperplane, so pairwise
  // distances come out exactly edge * |e_i - e_j| / sqrt(2) = edge.
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(m - 1, m);
  const double s = edge / std::sqrt(2.0);
  for (int k = 1; k < m; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1.0));
    for (int i = 0; i < k; ++i) pts(k - 1, i) = s / norm;
    pts(k - 1, k) = -s * static_cast<double>(k) / norm;
  }
  return pts;
}

namespace geo {

Eigen::MatrixXd orthogonal_taking(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index d = a.size();
  Eigen::VectorXd diff = a - b;
  const double nrm = diff.norm();
  if (nrm < 1e-14) return Eigen::MatrixXd::Identity(d, d);
  diff /= nrm;
  return Eigen::MatrixXd::Identity(d, d) - 2.0 * diff * diff.transpose();
}

Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& w) {
  const Eigen::Index d = w.size();
  Eigen::MatrixXd m(d, 1);
  m.col(0) = w;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(d - 1);
}

Eigen::MatrixXd random_orthogonal(int k, RngStream& rng) {
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < k; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Eigen::MatrixXd random_rotation_fixing_axis(const Eigen::VectorXd& w, RngStream& rng) {
  const Eigen::Index d = w.size();
  Eigen::MatrixXd basis(d, d);
  basis.col(0) = w;
  basis.rightCols(d - 1) = orthonormal_complement(w);
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(d, d);
  block.bottomRightCorner(d - 1, d - 1) = random_orthogonal(static_cast<int>(d) - 1, rng);
  return basis * block * basis.transpose();
}

}  // namespace geo
}  // namespace udg
