#pragma once

#include <Eigen/Dense>

namespace simplicial::linalg {

/// Relative threshold below which eigenvalues and singular values count as zero.
inline constexpr double kKernelTolerance = 1e-8;
/// Allowed asymmetry of W^{1/2} L W^{-1/2} before an operator is rejected as not self-adjoint.
inline constexpr double kSymmetryTolerance = 1e-8;

struct WeightedEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns orthonormal under <x, y>_W = x^T W y
};

/**
 * Eigen-decomposition of an operator that is self-adjoint for the inner
 * product with diagonal weights `w`. Solves S = W^{1/2} L W^{-1/2} and maps
 * eigenvectors back through W^{-1/2}.
 */
WeightedEigen weighted_eigensolve(const Eigen::MatrixXd& op, const Eigen::VectorXd& w);

/// Zero threshold for a spectrum: kKernelTolerance * max(1, spectral radius).
double kernel_threshold(const Eigen::VectorXd& eigenvalues);

/// Orthonormal (under W) basis of the column space of `a`.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& a, const Eigen::VectorXd& w);
/// Orthonormal (under W) basis of the null space of `a`.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& a, const Eigen::VectorXd& w);

/// W-orthogonal projector Q Q^T W onto the span of W-orthonormal columns Q.
Eigen::MatrixXd projector(const Eigen::MatrixXd& q, const Eigen::VectorXd& w);

/// Numerical rank from singular values.
Eigen::Index numeric_rank(const Eigen::MatrixXd& a);

double weighted_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

}  // namespace simplicial::linalg
