#include "simplicial/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "simplicial/errors.hpp"

namespace simplicial::linalg {

WeightedEigen weighted_eigensolve(const Eigen::MatrixXd& op, const Eigen::VectorXd& w) {
  if (op.rows() != op.cols() || op.rows() != w.size())
    throw PreconditionError("eigensolve: operator and weights have mismatched sizes");
  if (op.rows() == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
  const Eigen::VectorXd root = w.cwiseSqrt();
  const Eigen::VectorXd inv_root = root.cwiseInverse();
  const Eigen::MatrixXd s = root.asDiagonal() * op * inv_root.asDiagonal();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale)
    throw PreconditionError("operator is not self-adjoint for the given weights (asymmetry " +
                            std::to_string(asym) + ")");
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw InternalError("eigensolver did not converge");
  return {solver.eigenvalues(), inv_root.asDiagonal() * solver.eigenvectors()};
}

double kernel_threshold(const Eigen::VectorXd& eigenvalues) {
  const double radius = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return kKernelTolerance * std::max(1.0, radius);
}

namespace {

// Left singular vectors of W^{1/2} A with non-negligible singular values.
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = kKernelTolerance * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

Eigen::MatrixXd range_basis(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd u = orthonormal_columns(w.cwiseSqrt().asDiagonal() * a);
  return w.cwiseSqrt().cwiseInverse().asDiagonal() * u;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) {
    return w.cwiseSqrt().cwiseInverse().asDiagonal() * Eigen::MatrixXd::Identity(n, n);
  }
  // ker A = W^{-1/2} ker(A W^{-1/2}); the latter from right singular vectors.
  const Eigen::VectorXd inv_root = w.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = a * inv_root.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = kKernelTolerance * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return inv_root.asDiagonal() * svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd projector(const Eigen::MatrixXd& q, const Eigen::VectorXd& w) {
  return q * q.transpose() * w.asDiagonal();
}

Eigen::Index numeric_rank(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = kKernelTolerance * std::max(1.0, sv(0));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return r;
}

double weighted_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  return std::sqrt((w.array() * x.array().square()).sum());
}

}  // namespace simplicial::linalg
