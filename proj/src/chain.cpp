#include "simplicial/chain.hpp"

#include <set>

#include "simplicial/errors.hpp"

namespace simplicial {

std::string StateLabel::str() const {
  if (death) return "death";
  if (simplex.dim() <= 0) return (sign > 0 ? "" : "-") + simplex.str();
  return (sign > 0 ? "+" : "-") + simplex.str();
}

Labels canonical_labels(const SimplicialComplex& complex, int d) {
  Labels out;
  for (const Simplex& s : complex.simplices(d)) out.push_back({s, 1, false});
  return out;
}

Labels oriented_labels(const SimplicialComplex& complex, int d, bool with_death) {
  Labels out;
  for (const Simplex& s : complex.simplices(d)) out.push_back({s, 1, false});
  for (const Simplex& s : complex.simplices(d)) out.push_back({s, -1, false});
  if (with_death) out.push_back(StateLabel::death_state());
  return out;
}

namespace {

void require_unique(const Labels& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l.str()).second)
      throw PreconditionError(std::string("duplicate ") + what + " label " + l.str());
}

}  // namespace

OperatorMatrix::OperatorMatrix(Labels rows_, Labels cols_, Eigen::MatrixXd values_)
    : rows(std::move(rows_)), cols(std::move(cols_)), values(std::move(values_)) {
  if (static_cast<Eigen::Index>(rows.size()) != values.rows() ||
      static_cast<Eigen::Index>(cols.size()) != values.cols())
    throw PreconditionError("operator labels do not match matrix shape");
  require_unique(rows, "row");
  require_unique(cols, "column");
}

OperatorMatrix IncidenceMatrix::to_real() const {
  return OperatorMatrix(rows, cols, values.cast<double>());
}

Cochain Cochain::zero(const SimplicialComplex& complex, int d) {
  return Cochain(d, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.count(d))));
}

Cochain Cochain::indicator(const SimplicialComplex& complex, const OrientedSimplex& s) {
  Cochain f = zero(complex, s.simplex().dim());
  f.values_(static_cast<Eigen::Index>(complex.require_index(s.simplex()))) = s.sign();
  return f;
}

double Cochain::evaluate(const SimplicialComplex& complex, const OrientedSimplex& s) const {
  if (s.simplex().dim() != dim_) throw PreconditionError("cochain evaluated on a simplex of wrong dimension");
  return s.sign() * values_(static_cast<Eigen::Index>(complex.require_index(s.simplex())));
}

IncidenceMatrix boundary_matrix(const SimplicialComplex& complex, int d) {
  if (d < 1 || d > complex.top_dim())
    throw PreconditionError("boundary map needs 1 <= d <= N, got d=" + std::to_string(d));
  const auto rows = static_cast<Eigen::Index>(complex.count(d - 1));
  const auto cols = static_cast<Eigen::Index>(complex.count(d));
  IntegerMatrix m = IntegerMatrix::Zero(rows, cols);
  for (std::size_t i = 0; i < complex.count(d); ++i) {
    const auto faces = complex.faces(d, i);
    for (std::size_t j = 0; j < faces.size(); ++j)
      m(static_cast<Eigen::Index>(faces[j]), static_cast<Eigen::Index>(i)) = (j % 2 == 0) ? 1 : -1;
  }
  return {canonical_labels(complex, d - 1), canonical_labels(complex, d), std::move(m)};
}

IncidenceMatrix coboundary_matrix(const SimplicialComplex& complex, int d) {
  if (d < 0 || d > complex.top_dim() - 1)
    throw PreconditionError("coboundary map needs 0 <= d <= N-1, got d=" + std::to_string(d));
  IncidenceMatrix b = boundary_matrix(complex, d + 1);
  return {std::move(b.cols), std::move(b.rows), b.values.transpose()};
}

Eigen::VectorXd weight_vector(const WeightFunction& w, int d) {
  const auto& v = w.at_dim(d);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

OperatorMatrix adjoint_coboundary_matrix(const SimplicialComplex& complex, int d, const WeightFunction& w) {
  const IncidenceMatrix delta = coboundary_matrix(complex, d);
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::VectorXd wu = weight_vector(w, d + 1);
  Eigen::MatrixXd adj = wd.cwiseInverse().asDiagonal() * delta.values.cast<double>().transpose() *
                        wu.asDiagonal();
  return OperatorMatrix(delta.cols, delta.rows, std::move(adj));
}

double inner_product(const Cochain& f, const Cochain& g, const WeightFunction& w) {
  if (f.dim() != g.dim() || f.values().size() != g.values().size())
    throw PreconditionError("inner product of cochains of different dimension");
  const Eigen::VectorXd wd = weight_vector(w, f.dim());
  if (wd.size() != f.values().size()) throw PreconditionError("weight function belongs to another complex");
  return (wd.array() * f.values().array() * g.values().array()).sum();
}

}  // namespace simplicial
