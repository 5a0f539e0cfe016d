#pragma once

#include <Eigen/Dense>

#include "udg/rng.hpp"

namespace udg {

/// Coordinates of a regular simplex on m vertices with the given edge
/// length, centered at the origin of R^(m-1). Points are columns of the
/// (m-1) x m result (m = 1 gives a 0 x 1 matrix: the single point of R^0).
Eigen::MatrixXd simplex_coordinates(int m, double edge);

namespace geo {

/// Orthogonal map sending unit vector a to unit vector b (a reflection
/// across their bisector; identity when a == b).
Eigen::MatrixXd orthogonal_taking(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Columns form an orthonormal basis of the complement of unit vector w.
Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& w);

/// Haar-random orthogonal map fixing the line through unit vector w.
Eigen::MatrixXd random_rotation_fixing_axis(const Eigen::VectorXd& w, RngStream& rng);

/// Haar-random orthogonal k x k matrix (QR of a Gaussian with sign fix).
Eigen::MatrixXd random_orthogonal(int k, RngStream& rng);

}  // namespace geo
}  // namespace udg
