#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "simplicial/chain.hpp"
#include "simplicial/complex.hpp"

namespace simplicial {

/**
 * \brief Eigen-decomposition of a weighted self-adjoint operator.
 *
 * Eigenvalues ascend; eigenvector columns are orthonormal under the weighted
 * inner product. `kernel_dim` counts eigenvalues below `kernel_tolerance`.
 */
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::size_t kernel_dim = 0;
  double kernel_tolerance = 0.0;

  /// Eigenvalues at or above the kernel tolerance.
  Eigen::VectorXd nonzero() const;
  /// Smallest nonzero eigenvalue, if any.
  std::optional<double> smallest_nonzero() const;
};

/// L_d^up = delta*_d delta_d (0 <= d <= N-1).
OperatorMatrix up_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w);
/// L_d^down = delta_{d-1} delta*_{d-1} (1 <= d <= N).
OperatorMatrix down_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w);
/// L_d = L_d^up + L_d^down with the missing half taken as zero at d = 0 and d = N.
OperatorMatrix full_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w);

/**
 * Up Laplacian on chains, boundary_{d+1} boundary*_{d+1}, where the adjoint is
 * taken for the chain inner product with weights `w`. In the canonical basis
 * this is delta_d^T W_{d+1}^{-1} delta_d W_d. It is self-adjoint for the
 * weights of dimension d, and with reciprocal-degree weights it is the
 * transpose of the normalized cochain up Laplacian.
 */
OperatorMatrix chain_up_laplacian(const SimplicialComplex& complex, int d, const WeightFunction& w);

/// Spectrum of an operator self-adjoint for diagonal weights `weights`.
SpectralDecomposition spectrum(const OperatorMatrix& op, const Eigen::VectorXd& weights);
/// Same, with the weights of dimension d.
SpectralDecomposition spectrum(const OperatorMatrix& op, const WeightFunction& w, int d);
/// Plain symmetric operator (unit weights).
SpectralDecomposition spectrum(const OperatorMatrix& op);

/// Rank over the rationals by fraction-free (Bareiss) elimination on exact integers.
std::size_t exact_rank(const IntegerMatrix& m);

/// |S_d| - rank boundary_d - rank boundary_{d+1}, exact.
std::size_t betti_exact(const SimplicialComplex& complex, int d);
/// Multiplicity of the zero eigenvalue of L_d for weights `w`.
std::size_t betti_spectral(const SimplicialComplex& complex, int d, const WeightFunction& w);
/// Both methods; throws InternalError if they disagree.
std::size_t betti(const SimplicialComplex& complex, int d, const WeightFunction& w);

struct HodgeParts {
  Cochain exact;     // component in im delta_{d-1}
  Cochain harmonic;  // component in ker L_d
  Cochain coexact;   // component in im delta*_d
};

/// Weighted-orthogonal decomposition f = exact + harmonic + coexact.
HodgeParts hodge_decompose(const SimplicialComplex& complex, const Cochain& f, const WeightFunction& w);

/// W-orthonormal basis of im delta_{d-1} (empty for d = 0).
Eigen::MatrixXd exact_basis(const SimplicialComplex& complex, int d, const WeightFunction& w);
/// W-orthonormal basis of ker delta*_{d-1} (everything for d = 0).
Eigen::MatrixXd coclosed_basis(const SimplicialComplex& complex, int d, const WeightFunction& w);
/// W-orthonormal basis of ker delta_d (everything for d = N).
Eigen::MatrixXd closed_basis(const SimplicialComplex& complex, int d, const WeightFunction& w);

/**
 * lambda(K): min spectrum of L_{N-1}^up restricted to ker L_{N-1}^down.
 * nullopt when the restriction subspace is empty.
 */
std::optional<double> spectral_gap(const SimplicialComplex& complex, const WeightFunction& w);
/// lambda-bar(K): min spectrum of L_{N-1}^up restricted to im L_{N-1}^up.
std::optional<double> essential_gap(const SimplicialComplex& complex, const WeightFunction& w);

/// Minimum eigenvalue of a W-self-adjoint operator restricted to the span of W-orthonormal `basis`.
std::optional<double> restricted_min_eigenvalue(const Eigen::MatrixXd& op, const Eigen::VectorXd& w,
                                                const Eigen::MatrixXd& basis);

}  // namespace simplicial
