#include "simplicial/hodge.hpp"

#include <algorithm>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "simplicial/errors.hpp"
#include "simplicial/linalg.hpp"

namespace simplicial {

Eigen::VectorXd SpectralDecomposition::nonzero() const {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) >= kernel_tolerance) out.push_back(eigenvalues(i));
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

std::optional<double> SpectralDecomposition::smallest_nonzero() const {
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) >= kernel_tolerance) return eigenvalues(i);
  return std::nullopt;
}

OperatorMatrix up_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  if (d < 0 || d > complex.top_dim() - 1)
    throw PreconditionError("up Laplacian needs 0 <= d <= N-1, got d=" + std::to_string(d));
  const Eigen::MatrixXd delta = coboundary_matrix(complex, d).values.cast<double>();
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::VectorXd wu = weight_vector(w, d + 1);
  Eigen::MatrixXd l = wd.cwiseInverse().asDiagonal() * delta.transpose() * wu.asDiagonal() * delta;
  return OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d), std::move(l));
}

OperatorMatrix down_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  if (d < 1 || d > complex.top_dim())
    throw PreconditionError("down Laplacian needs 1 <= d <= N, got d=" + std::to_string(d));
  const Eigen::MatrixXd delta = coboundary_matrix(complex, d - 1).values.cast<double>();
  const Eigen::VectorXd wl = weight_vector(w, d - 1);
  const Eigen::VectorXd wd = weight_vector(w, d);
  Eigen::MatrixXd l = delta * wl.cwiseInverse().asDiagonal() * delta.transpose() * wd.asDiagonal();
  return OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d), std::move(l));
}

OperatorMatrix full_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  if (d < 0 || d > complex.top_dim())
    throw PreconditionError("Laplacian dimension out of range: " + std::to_string(d));
  const auto n = static_cast<Eigen::Index>(complex.count(d));
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  if (d < complex.top_dim()) l += up_laplacian(complex, d, w).values;
  if (d > 0) l += down_laplacian(complex, d, w).values;
  return OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d), std::move(l));
}

OperatorMatrix chain_up_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  if (d < 0 || d > complex.top_dim() - 1)
    throw PreconditionError("up Laplacian needs 0 <= d <= N-1, got d=" + std::to_string(d));
  const Eigen::MatrixXd delta = coboundary_matrix(complex, d).values.cast<double>();
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::VectorXd wu = weight_vector(w, d + 1);
  Eigen::MatrixXd l = delta.transpose() * wu.cwiseInverse().asDiagonal() * delta * wd.asDiagonal();
  return OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d), std::move(l));
}

SpectralDecomposition spectrum(const OperatorMatrix& op, const Eigen::VectorXd& weights) {
  auto eig = linalg::weighted_eigensolve(op.values, weights);
  SpectralDecomposition out;
  out.kernel_tolerance = linalg::kernel_threshold(eig.values);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) < out.kernel_tolerance) ++out.kernel_dim;
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  return out;
}

SpectralDecomposition spectrum(const OperatorMatrix& op, const WeightFunction& w, int d) {
  return spectrum(op, weight_vector(w, d));
}

SpectralDecomposition spectrum(const OperatorMatrix& op) {
  return spectrum(op, Eigen::VectorXd::Ones(op.values.rows()));
}

std::size_t exact_rank(const IntegerMatrix& m) {
  using boost::multiprecision::cpp_int;
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

  cpp_int previous = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        cpp_int num = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        if (num % previous != 0) throw InternalError("fraction-free elimination lost exactness");
        a[i][j] = num / previous;
      }
      a[i][c] = 0;
    }
    previous = a[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t betti_exact(const SimplicialComplex& complex, int d) {
  if (d < 0 || d > complex.top_dim())
    throw PreconditionError("betti dimension out of range: " + std::to_string(d));
  const std::size_t n = complex.count(d);
  const std::size_t below = d >= 1 ? exact_rank(boundary_matrix(complex, d).values) : 0;
  const std::size_t above = d < complex.top_dim() ? exact_rank(boundary_matrix(complex, d + 1).values) : 0;
  return n - below - above;
}

std::size_t betti_spectral(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  return spectrum(full_laplacian(complex, d, w), w, d).kernel_dim;
}

std::size_t betti(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  const std::size_t exact = betti_exact(complex, d);
  const std::size_t spectral = betti_spectral(complex, d, w);
  if (exact != spectral)
    throw InternalError("betti_" + std::to_string(d) + ": exact rank gives " + std::to_string(exact) +
                        " but spectral kernel gives " + std::to_string(spectral));
  return exact;
}

Eigen::MatrixXd exact_basis(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  const auto n = static_cast<Eigen::Index>(complex.count(d));
  if (d == 0) return Eigen::MatrixXd(n, 0);
  return linalg::range_basis(coboundary_matrix(complex, d - 1).values.cast<double>(), weight_vector(w, d));
}

Eigen::MatrixXd coclosed_basis(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  const Eigen::VectorXd wd = weight_vector(w, d);
  if (d == 0) return linalg::kernel_basis(Eigen::MatrixXd(0, wd.size()), wd);
  return linalg::kernel_basis(adjoint_coboundary_matrix(complex, d - 1, w).values, wd);
}

Eigen::MatrixXd closed_basis(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  const Eigen::VectorXd wd = weight_vector(w, d);
  if (d == complex.top_dim()) return linalg::kernel_basis(Eigen::MatrixXd(0, wd.size()), wd);
  return linalg::kernel_basis(coboundary_matrix(complex, d).values.cast<double>(), wd);
}

HodgeParts hodge_decompose(const SimplicialComplex& complex, const Cochain& f, const WeightFunction& w) {
  const int d = f.dim();
  if (d < 0 || d > complex.top_dim() || f.values().size() != static_cast<Eigen::Index>(complex.count(d)))
    throw PreconditionError("cochain does not belong to this complex");
  const Eigen::VectorXd wd = weight_vector(w, d);
  const auto n = static_cast<Eigen::Index>(complex.count(d));

  const Eigen::MatrixXd qe = exact_basis(complex, d, w);
  Eigen::MatrixXd qc(n, 0);
  if (d < complex.top_dim())
    qc = linalg::range_basis(adjoint_coboundary_matrix(complex, d, w).values, wd);
  const SpectralDecomposition s = spectrum(full_laplacian(complex, d, w), wd);
  const Eigen::MatrixXd qh = s.eigenvectors.leftCols(static_cast<Eigen::Index>(s.kernel_dim));

  const Eigen::VectorXd& x = f.values();
  return HodgeParts{Cochain(d, linalg::projector(qe, wd) * x), Cochain(d, linalg::projector(qh, wd) * x),
                    Cochain(d, linalg::projector(qc, wd) * x)};
}

std::optional<double> restricted_min_eigenvalue(const Eigen::MatrixXd& op, const Eigen::VectorXd& w,
                                                const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return std::nullopt;
  const Eigen::MatrixXd r = basis.transpose() * w.asDiagonal() * op * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (r + r.transpose()));
  return solver.eigenvalues()(0);
}

namespace {

void require_gap_dims(const SimplicialComplex& complex) {
  if (complex.top_dim() < 1) throw PreconditionError("spectral gaps need a complex of dimension >= 1");
}

}  // namespace

std::optional<double> spectral_gap(const SimplicialComplex& complex, const WeightFunction& w) {
  require_gap_dims(complex);
  const int d = complex.top_dim() - 1;
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::MatrixXd up = up_laplacian(complex, d, w).values;
  Eigen::MatrixXd basis;
  if (d == 0)
    basis = linalg::kernel_basis(Eigen::MatrixXd(0, wd.size()), wd);
  else
    basis = linalg::kernel_basis(down_laplacian(complex, d, w).values, wd);
  auto value = restricted_min_eigenvalue(up, wd, basis);
  if (value && *value < 0.0) value = std::max(*value, 0.0);
  return value;
}

std::optional<double> essential_gap(const SimplicialComplex& complex, const WeightFunction& w) {
  require_gap_dims(complex);
  const int d = complex.top_dim() - 1;
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::MatrixXd up = up_laplacian(complex, d, w).values;
  return restricted_min_eigenvalue(up, wd, linalg::range_basis(up, wd));
}

}  // namespace simplicial
