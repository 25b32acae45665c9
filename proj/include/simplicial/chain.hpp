#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simplicial/complex.hpp"

namespace simplicial {

/// Row/column label of an operator: a simplex with an orientation sign, or the death state.
struct StateLabel {
  Simplex simplex;
  int sign = 1;
  bool death = false;

  static StateLabel death_state() { return StateLabel{Simplex{}, 1, true}; }
  std::string str() const;
  bool operator==(const StateLabel&) const = default;
};

using Labels = std::vector<StateLabel>;

/// One label per canonical d-simplex, sign +1.
Labels canonical_labels(const SimplicialComplex& complex, int d);
/// 2|S_d| labels: +[s_0..s_{n-1}] followed by -[s_0..s_{n-1}]; optional trailing death state.
Labels oriented_labels(const SimplicialComplex& complex, int d, bool with_death = false);

/// Dense real matrix with labelled rows and columns.
struct OperatorMatrix {
  Labels rows;
  Labels cols;
  Eigen::MatrixXd values;

  OperatorMatrix() = default;
  /// Throws when shapes disagree or a label list has duplicates.
  OperatorMatrix(Labels rows, Labels cols, Eigen::MatrixXd values);

  Eigen::Index size() const { return values.rows(); }
};

using IntegerMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact integer incidence matrix (boundary / coboundary).
struct IncidenceMatrix {
  Labels rows;
  Labels cols;
  IntegerMatrix values;

  OperatorMatrix to_real() const;
};

/// d-cochain stored on canonical representatives; f(-[s]) = -f([s]).
class Cochain {
 public:
  Cochain(int dim, Eigen::VectorXd values) : dim_(dim), values_(std::move(values)) {}
  static Cochain zero(const SimplicialComplex& complex, int d);
  static Cochain indicator(const SimplicialComplex& complex, const OrientedSimplex& s);

  int dim() const { return dim_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double evaluate(const SimplicialComplex& complex, const OrientedSimplex& s) const;

 private:
  int dim_;
  Eigen::VectorXd values_;
};

/// Matrix of the boundary C_d -> C_{d-1}; requires 1 <= d <= N.
IncidenceMatrix boundary_matrix(const SimplicialComplex& complex, int d);
/// Matrix of the coboundary C^d -> C^{d+1}; the transpose of boundary_matrix(d+1).
IncidenceMatrix coboundary_matrix(const SimplicialComplex& complex, int d);

/// Diagonal of W_d as a vector.
Eigen::VectorXd weight_vector(const WeightFunction& w, int d);

/// Weighted adjoint of the coboundary: W_d^{-1} delta_d^T W_{d+1}.
OperatorMatrix adjoint_coboundary_matrix(const SimplicialComplex& complex, int d, const WeightFunction& w);

/// <f, g> = sum_s w(s) f(s) g(s).
double inner_product(const Cochain& f, const Cochain& g, const WeightFunction& w);

}  // namespace simplicial
