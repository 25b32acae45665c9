#include "simplicial/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "simplicial/errors.hpp"
#include "simplicial/hodge.hpp"
#include "simplicial/linalg.hpp"
#include "simplicial/orientation.hpp"

namespace simplicial {

namespace {

constexpr std::size_t kMaxIterations = 1000000;
constexpr double kStepTolerance = 1e-13;
constexpr double kAgreementTolerance = 1e-8;
constexpr double kFitFloor = 1e-8;

void check_laziness(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("laziness must lie in [0, 1], got " + std::to_string(p));
}

void check_rate_laziness(double p) {
  check_laziness(p);
  if (p < 0.5) throw PreconditionError("convergence bounds need p >= 1/2, got " + std::to_string(p));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void require_top_dim(const SimplicialComplex& complex) {
  if (complex.top_dim() < 1) throw PreconditionError("walk needs a complex of dimension >= 1");
}

// Every (N-1)-simplex must lie in an N-simplex.
void require_pure_top(const SimplicialComplex& complex) {
  require_top_dim(complex);
  const int d = complex.top_dim() - 1;
  for (std::size_t i = 0; i < complex.count(d); ++i)
    if (complex.coface_count(d, i) == 0)
      throw PreconditionError("complex is not pure: " + complex.simplex(d, i).str() + " lies in no " +
                              std::to_string(d + 1) + "-simplex");
}

int position_sign(const SimplicialComplex& complex, int d, std::size_t s, std::size_t face) {
  const auto faces = complex.faces(d, s);
  for (std::size_t j = 0; j < faces.size(); ++j)
    if (faces[j] == face) return (j % 2 == 0) ? 1 : -1;
  throw InternalError("face lookup failed");
}

std::size_t oriented_index(std::size_t i, int sign, std::size_t n) { return sign > 0 ? i : i + n; }

// A[s'][s] = P(+s -> +s') - P(+s -> -s').
Eigen::MatrixXd antisymmetric_part(const Eigen::MatrixXd& p, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return (p.block(0, 0, m, m) - p.block(0, m, m, m)).transpose();
}

Eigen::VectorXd signed_indicator(const SimplicialComplex& complex, const OrientedSimplex& s, int d) {
  if (s.simplex().dim() != d)
    throw PreconditionError("start " + s.str() + " is not a " + std::to_string(d) + "-simplex");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.count(d)));
  const auto i = complex.index_of(s.simplex());
  if (!i) throw PreconditionError("start " + s.str() + " is not in the complex");
  e(static_cast<Eigen::Index>(*i)) = s.sign();
  return e;
}

Eigen::MatrixXd kernel_vectors(const SpectralDecomposition& s) {
  return s.eigenvectors.leftCols(static_cast<Eigen::Index>(s.kernel_dim));
}

// Iterates x <- step(x) until the max-abs change drops below kStepTolerance.
template <typename Step>
std::pair<Eigen::VectorXd, bool> iterate_to_limit(Eigen::VectorXd x, Step step) {
  for (std::size_t k = 0; k < kMaxIterations; ++k) {
    Eigen::VectorXd next = step(x);
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (!std::isfinite(change) || x.cwiseAbs().maxCoeff() > 1e12) return {x, false};
    if (change < kStepTolerance) return {x, true};
  }
  return {x, false};
}

ExpectationProcess run_process(const Eigen::MatrixXd& a, double scale, const Eigen::VectorXd& start,
                               const Eigen::MatrixXd& kernel, const Eigen::VectorXd& weights, int d,
                               std::size_t steps) {
  ExpectationProcess out;
  out.scale = scale;
  out.weights = weights;
  const Eigen::MatrixXd step = scale * a;
  Eigen::VectorXd x = start;
  out.values.emplace_back(d, x);
  for (std::size_t t = 0; t < steps; ++t) {
    x = step * x;
    out.values.emplace_back(d, x);
  }
  const Eigen::VectorXd limit = linalg::projector(kernel, weights) * start;
  out.limit = Cochain(d, limit);
  auto [iterated, converged] = iterate_to_limit(x, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(step * v); });
  out.iteration_converged = converged;
  out.iteration_gap = (iterated - limit).cwiseAbs().maxCoeff();
  if (!converged)
    out.warnings.push_back("power iteration did not settle; limit taken from the eigenprojection");
  else if (out.iteration_gap > kAgreementTolerance)
    out.warnings.push_back("power iteration and eigenprojection differ by " + fmt(out.iteration_gap));
  return out;
}

std::vector<std::size_t> face_degrees(const SimplicialComplex& complex) {
  const int n = complex.top_dim();
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < complex.count(n - 1); ++r) out.push_back(complex.coface_count(n - 1, r));
  return out;
}

bool all_faces_degree_two(const SimplicialComplex& complex) {
  const auto deg = face_degrees(complex);
  return std::all_of(deg.begin(), deg.end(), [](std::size_t k) { return k == 2; });
}

void require_faces_at_most_two(const SimplicialComplex& complex) {
  const int n = complex.top_dim();
  std::string offenders;
  for (std::size_t r = 0; r < complex.count(n - 1); ++r)
    if (complex.coface_count(n - 1, r) > 2) offenders += " " + complex.simplex(n - 1, r).str();
  if (!offenders.empty())
    throw PreconditionError("graph-type walk needs (N-1)-faces of degree <= 2; offenders:" + offenders);
}

double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

void finish_trace(ConvergenceTrace& trace) {
  trace.fitted_ratio = fit_ratio(trace.distance, &trace.fit_steps);
  const double d0 = trace.distance.empty() ? 0.0 : trace.distance.front();
  for (std::size_t t = 0; t < trace.distance.size(); ++t)
    trace.bound_curve.push_back(d0 * std::pow(trace.bound, static_cast<double>(t)));
}

}  // namespace

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::vertices: return "vertices";
    case StateKind::oriented: return "oriented";
    case StateKind::oriented_with_death: return "oriented-with-death";
    case StateKind::top_simplices: return "top-simplices";
  }
  return "?";
}

std::size_t WalkStateSpace::simplex_count() const {
  switch (kind) {
    case StateKind::oriented: return states.size() / 2;
    case StateKind::oriented_with_death: return (states.size() - 1) / 2;
    default: return states.size();
  }
}

std::size_t WalkStateSpace::find(const std::string& text) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].str() == text) return i;
  if (text != "death") {
    const OrientedSimplex parsed = parse_oriented_simplex(text);
    const Simplex& s = parsed.simplex();
    const int sign = parsed.sign();
    const bool oriented = kind == StateKind::oriented || kind == StateKind::oriented_with_death;
    for (std::size_t i = 0; i < states.size(); ++i)
      if (!states[i].death && states[i].simplex == s && (!oriented || states[i].sign == sign)) return i;
  }
  throw PreconditionError("no walk state named '" + text + "'");
}

void WalkConfig::validate() const {
  check_laziness(laziness);
  if (chains < 1) throw PreconditionError("Monte Carlo needs at least one chain");
}

Distribution Distribution::point_mass(std::size_t states, std::size_t index) {
  if (index >= states) throw PreconditionError("point mass index out of range");
  Distribution d{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states))};
  d.probabilities(static_cast<Eigen::Index>(index)) = 1.0;
  return d;
}

void Distribution::validate() const {
  if (probabilities.size() == 0) throw PreconditionError("empty distribution");
  if (probabilities.minCoeff() < 0.0) throw PreconditionError("distribution has negative entries");
  if (std::abs(probabilities.sum() - 1.0) > 1e-12) throw PreconditionError("distribution does not sum to 1");
}

Distribution MarkovWalk::evolve(const Distribution& start, std::size_t steps) const {
  if (start.probabilities.size() != transition.values.rows())
    throw PreconditionError("distribution size does not match the walk");
  const Eigen::MatrixXd pt = transition.values.transpose();
  Eigen::VectorXd x = start.probabilities;
  for (std::size_t t = 0; t < steps; ++t) x = pt * x;
  return {x};
}

double MarkovWalk::stochasticity_defect() const {
  const Eigen::MatrixXd& p = transition.values;
  const double rows = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, std::max(0.0, -p.minCoeff()));
}

// ---- graph walk ----

MarkovWalk graph_walk(const SimplicialComplex& complex, double alpha) {
  check_laziness(alpha);
  require_top_dim(complex);
  const auto n = static_cast<Eigen::Index>(complex.count(0));
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd deg(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto cof = complex.cofaces(0, static_cast<std::size_t>(v));
    if (cof.empty()) throw PreconditionError("graph walk: isolated vertex " + complex.simplex(0, v).str());
    deg(v) = static_cast<double>(cof.size());
    p(v, v) = alpha;
    for (std::size_t e : cof) {
      const auto faces = complex.faces(1, e);
      const auto other = static_cast<Eigen::Index>(faces[0] == static_cast<std::size_t>(v) ? faces[1] : faces[0]);
      p(v, other) += (1.0 - alpha) / deg(v);
    }
  }
  MarkovWalk walk;
  walk.space = {StateKind::vertices, 0, canonical_labels(complex, 0)};
  walk.transition = OperatorMatrix(walk.space.states, walk.space.states, std::move(p));
  walk.reversing_measure = deg;
  walk.laziness = alpha;
  return walk;
}

double graph_walk_identity_residual(const SimplicialComplex& complex, double alpha) {
  const MarkovWalk walk = graph_walk(complex, alpha);
  const SimplicialComplex graph = complex.skeleton(1);
  const Eigen::MatrixXd delta = up_laplacian(graph, 0, WeightFunction::normalized(graph)).values;
  const auto n = delta.rows();
  return (walk.transition.values - (Eigen::MatrixXd::Identity(n, n) - (1.0 - alpha) * delta)).cwiseAbs().maxCoeff();
}

// ---- up walk ----

std::optional<std::string> up_laziness_warning(int top_dim, double p) {
  const double lo = static_cast<double>(top_dim - 1) / (3.0 * top_dim - 1.0);
  if (p > lo && p < 1.0) return std::nullopt;
  return "laziness p=" + fmt(p) + " is outside (" + fmt(lo) + ", 1); the up-walk limit is not guaranteed";
}

std::optional<std::string> down_laziness_warning(std::size_t d_max, double p) {
  const double m = static_cast<double>(d_max);
  const double lo = (m - 2.0) / (3.0 * m - 4.0);
  if (p > lo && p < 1.0) return std::nullopt;
  return "laziness p=" + fmt(p) + " is outside (" + fmt(lo) + ", 1); the down-walk limit is not guaranteed";
}

MarkovWalk up_walk(const SimplicialComplex& complex, double p) {
  check_laziness(p);
  require_pure_top(complex);
  const int top = complex.top_dim();
  const int d = top - 1;
  const std::size_t n = complex.count(d);
  const auto size = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  Eigen::VectorXd measure(size);

  for (std::size_t i = 0; i < n; ++i) {
    const auto cof = complex.cofaces(d, i);
    const double move = (1.0 - p) / (top * static_cast<double>(cof.size()));
    for (int a : {1, -1}) {
      const auto r = static_cast<Eigen::Index>(oriented_index(i, a, n));
      measure(r) = static_cast<double>(cof.size());
      m(r, r) += p;
      for (std::size_t tau : cof) {
        const auto faces = complex.faces(top, tau);
        const int si = position_sign(complex, top, tau, i);
        for (std::size_t k = 0; k < faces.size(); ++k) {
          if (faces[k] == i) continue;
          const int s = si * ((k % 2 == 0) ? 1 : -1);
          m(r, static_cast<Eigen::Index>(oriented_index(faces[k], -s * a, n))) += move;
        }
      }
    }
  }
  MarkovWalk walk;
  walk.space = {StateKind::oriented, d, oriented_labels(complex, d)};
  walk.transition = OperatorMatrix(walk.space.states, walk.space.states, std::move(m));
  walk.reversing_measure = measure;
  walk.laziness = p;
  if (auto w = up_laziness_warning(top, p)) walk.warnings.push_back(*w);
  return walk;
}

UpTransitionOperator up_transition_operator(const SimplicialComplex& complex, double p) {
  const MarkovWalk walk = up_walk(complex, p);
  const int top = complex.top_dim();
  const int d = top - 1;
  const std::size_t n = complex.count(d);
  const WeightFunction w = WeightFunction::reciprocal_degree(complex, d);

  UpTransitionOperator out;
  out.a = OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d),
                         antisymmetric_part(walk.transition.values, n));
  out.laplacian = chain_up_laplacian(complex, d, w);
  out.weights = weight_vector(w, d);
  out.top_eigenvalue = (p * (top - 1) + 1.0) / top;
  const auto m = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd expected =
      out.top_eigenvalue * Eigen::MatrixXd::Identity(m, m) - ((1.0 - p) / top) * out.laplacian.values;
  out.residual = (out.a.values - expected).cwiseAbs().maxCoeff();
  return out;
}

// ---- down walk ----

std::size_t max_lower_degree(const SimplicialComplex& complex, int d) {
  if (d < 1 || d > complex.top_dim())
    throw PreconditionError("down walk needs 1 <= d <= N, got d=" + std::to_string(d));
  std::size_t best = 0;
  for (std::size_t r = 0; r < complex.count(d - 1); ++r) best = std::max(best, complex.coface_count(d - 1, r));
  return best;
}

MarkovWalk down_walk(const SimplicialComplex& complex, int d, double p) {
  check_laziness(p);
  const std::size_t dmax = max_lower_degree(complex, d);
  if (dmax <= 1)
    throw PreconditionError("down walk needs two " + std::to_string(d) + "-simplices sharing a face (D_max = " +
                            std::to_string(dmax) + ")");
  const std::size_t n = complex.count(d);
  const auto size = static_cast<Eigen::Index>(2 * n + 1);
  const Eigen::Index death = size - 1;
  const double q = (1.0 - p) / (static_cast<double>(dmax - 1) * (d + 1));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);

  for (std::size_t i = 0; i < n; ++i) {
    const auto faces = complex.faces(d, i);
    for (int a : {1, -1}) {
      const auto r = static_cast<Eigen::Index>(oriented_index(i, a, n));
      m(r, r) = p;
      double moved = 0.0;
      for (std::size_t j = 0; j < faces.size(); ++j) {
        const int si = (j % 2 == 0) ? 1 : -1;
        for (std::size_t other : complex.cofaces(d - 1, faces[j])) {
          if (other == i) continue;
          const int s = si * position_sign(complex, d, other, faces[j]);
          m(r, static_cast<Eigen::Index>(oriented_index(other, -s * a, n))) += q;
          moved += q;
        }
      }
      // Deficits below roundoff level are exact zeros (no free faces).
      const double deficit = 1.0 - p - moved;
      m(r, death) = deficit > 1e-12 ? deficit : 0.0;
    }
  }
  m(death, death) = 1.0;

  MarkovWalk walk;
  walk.space = {StateKind::oriented_with_death, d, oriented_labels(complex, d, true)};
  walk.transition = OperatorMatrix(walk.space.states, walk.space.states, std::move(m));
  walk.laziness = p;
  if (auto w = down_laziness_warning(dmax, p)) walk.warnings.push_back(*w);
  return walk;
}

DownPropagation down_propagation_matrix(const SimplicialComplex& complex, int d, double p) {
  const MarkovWalk walk = down_walk(complex, d, p);
  const std::size_t n = complex.count(d);
  const auto m = static_cast<Eigen::Index>(n);

  DownPropagation out;
  out.d_max = max_lower_degree(complex, d);
  const double dm = static_cast<double>(out.d_max);
  out.diagonal_coefficient = (p * (dm - 2.0) + 1.0) / (dm - 1.0);
  out.coupling = (1.0 - p) / ((d + 1) * (dm - 1.0));

  const Eigen::MatrixXd b = antisymmetric_part(walk.transition.values, n);
  Eigen::MatrixXd table(2 * m, 2 * m);
  table << b, -b, -b, b;
  out.oriented_table = OperatorMatrix(oriented_labels(complex, d), oriented_labels(complex, d), std::move(table));
  out.b = OperatorMatrix(canonical_labels(complex, d), canonical_labels(complex, d), b);
  out.laplacian = down_laplacian(complex, d, WeightFunction::constant_one(complex));
  const Eigen::MatrixXd expected =
      out.diagonal_coefficient * Eigen::MatrixXd::Identity(m, m) - out.coupling * out.laplacian.values;
  out.residual = (out.oriented_table.values.topLeftCorner(m, m) - expected).cwiseAbs().maxCoeff();
  return out;
}

OperatorMatrix antisymmetrizer(const SimplicialComplex& complex, int d, bool with_death) {
  const std::size_t n = complex.count(d);
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, 2 * m + (with_death ? 1 : 0));
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = 1.0;
    t(i, i + m) = -1.0;
  }
  return OperatorMatrix(canonical_labels(complex, d), oriented_labels(complex, d, with_death), std::move(t));
}

double intertwining_residual(const SimplicialComplex& complex, int d, double p, std::size_t t_max) {
  const MarkovWalk walk = down_walk(complex, d, p);
  const DownPropagation prop = down_propagation_matrix(complex, d, p);
  const Eigen::MatrixXd t = antisymmetrizer(complex, d).values;
  const Eigen::MatrixXd pt = walk.transition.values.transpose();
  Eigen::MatrixXd left = t, right = t;
  double worst = 0.0;
  for (std::size_t k = 0; k <= t_max; ++k) {
    worst = std::max(worst, (left - right).cwiseAbs().maxCoeff());
    left = left * pt;
    right = prop.b.values * right;
  }
  return worst;
}

// ---- expectation processes ----

ExpectationProcess expectation_process_up(const SimplicialComplex& complex, const OrientedSimplex& start, double p,
                                          std::size_t steps) {
  const UpTransitionOperator op = up_transition_operator(complex, p);
  const int d = complex.top_dim() - 1;
  const SpectralDecomposition s = spectrum(op.laplacian, op.weights);
  ExpectationProcess out = run_process(op.a.values, 1.0 / op.top_eigenvalue, signed_indicator(complex, start, d),
                                       kernel_vectors(s), op.weights, d, steps);
  if (auto w = up_laziness_warning(complex.top_dim(), p)) out.warnings.insert(out.warnings.begin(), *w);
  return out;
}

ExpectationProcess expectation_process_down(const SimplicialComplex& complex, int d, const OrientedSimplex& start,
                                            double p, std::size_t steps) {
  const DownPropagation prop = down_propagation_matrix(complex, d, p);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(complex.count(d)));
  const SpectralDecomposition s = spectrum(prop.laplacian, ones);
  ExpectationProcess out = run_process(prop.b.values, 1.0 / prop.diagonal_coefficient,
                                       signed_indicator(complex, start, d), kernel_vectors(s), ones, d, steps);
  if (auto w = down_laziness_warning(prop.d_max, p)) out.warnings.insert(out.warnings.begin(), *w);
  return out;
}

HomologyDetection detect_homology_up(const SimplicialComplex& complex, double p) {
  const UpTransitionOperator op = up_transition_operator(complex, p);
  const int d = complex.top_dim() - 1;
  const std::size_t n = complex.count(d);
  const Eigen::MatrixXd limit_map = linalg::projector(kernel_vectors(spectrum(op.laplacian, op.weights)), op.weights);

  // The limit lies in D ker(delta); D^{-1} of it is a closed cochain.
  const WeightFunction w = WeightFunction::normalized(complex);
  const Eigen::VectorXd wd = weight_vector(w, d);
  const Eigen::MatrixXd exact = linalg::projector(exact_basis(complex, d, w), wd);
  const Eigen::MatrixXd harmonic = linalg::projector(coclosed_basis(complex, d, w), wd);
  Eigen::VectorXd deg(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) deg(static_cast<Eigen::Index>(i)) = static_cast<double>(complex.coface_count(d, i));

  HomologyDetection out;
  Eigen::MatrixXd projected(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd g = limit_map.col(static_cast<Eigen::Index>(i)).cwiseQuotient(deg);
    const double r = linalg::weighted_norm(g - exact * g, wd);
    out.residuals.push_back(r);
    out.max_trivial_residual = std::max(out.max_trivial_residual, r);
    projected.col(static_cast<Eigen::Index>(i)) = harmonic * g;
  }
  out.all_trivial = out.max_trivial_residual <= out.rank_tolerance;
  out.span_dim = static_cast<std::size_t>(linalg::numeric_rank(projected));
  out.betti = betti(complex, d, w);
  return out;
}

HomologyDetection detect_homology_down(const SimplicialComplex& complex, int d, double p) {
  const DownPropagation prop = down_propagation_matrix(complex, d, p);
  const std::size_t n = complex.count(d);
  const WeightFunction w = WeightFunction::constant_one(complex);
  const Eigen::VectorXd ones = weight_vector(w, d);
  const Eigen::MatrixXd limit_map = linalg::projector(kernel_vectors(spectrum(prop.laplacian, ones)), ones);

  Eigen::MatrixXd coexact = Eigen::MatrixXd::Zero(limit_map.rows(), limit_map.cols());
  if (d < complex.top_dim())
    coexact = linalg::projector(linalg::range_basis(adjoint_coboundary_matrix(complex, d, w).values, ones), ones);
  const Eigen::MatrixXd harmonic = linalg::projector(closed_basis(complex, d, w), ones);

  HomologyDetection out;
  Eigen::MatrixXd projected(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd g = limit_map.col(static_cast<Eigen::Index>(i));
    const double r = (g - coexact * g).norm();
    out.residuals.push_back(r);
    out.max_trivial_residual = std::max(out.max_trivial_residual, r);
    projected.col(static_cast<Eigen::Index>(i)) = harmonic * g;
  }
  out.all_trivial = out.max_trivial_residual <= out.rank_tolerance;
  out.span_dim = static_cast<std::size_t>(linalg::numeric_rank(projected));
  out.betti = betti(complex, d, w);
  return out;
}

// ---- graph-type walk ----

MarkovWalk graph_type_transition(const SimplicialComplex& complex, double p) {
  check_laziness(p);
  require_top_dim(complex);
  require_faces_at_most_two(complex);
  const int top = complex.top_dim();
  const auto n = static_cast<Eigen::Index>(complex.count(top));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd theta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto faces = complex.faces(top, static_cast<std::size_t>(i));
    std::size_t shared = 0;
    for (std::size_t r : faces)
      if (complex.coface_count(top - 1, r) >= 2) ++shared;
    if (shared == 0)
      throw PreconditionError("graph-type walk: " + complex.simplex(top, i).str() + " shares no face with another " +
                              std::to_string(top) + "-simplex");
    theta(i) = static_cast<double>(shared);
    m(i, i) = p;
    for (std::size_t r : faces)
      for (std::size_t other : complex.cofaces(top - 1, r))
        if (static_cast<Eigen::Index>(other) != i) m(i, static_cast<Eigen::Index>(other)) += (1.0 - p) / theta(i);
  }
  MarkovWalk walk;
  walk.space = {StateKind::top_simplices, top, canonical_labels(complex, top)};
  walk.transition = OperatorMatrix(walk.space.states, walk.space.states, std::move(m));
  walk.reversing_measure = theta;
  walk.laziness = p;
  if (p == 1.0) walk.warnings.push_back("p = 1: the walk never moves");
  return walk;
}

GraphTypeWalk graph_type_down_walk(const SimplicialComplex& complex, double p, GraphTypeOptions options) {
  check_laziness(p);
  require_top_dim(complex);
  require_faces_at_most_two(complex);
  if (!options.allow_free_faces) {
    const auto free = free_faces(complex);
    if (!free.empty()) {
      std::string list;
      for (const auto& f : free) list += " " + f.str();
      throw PreconditionError("complex has free faces; close them with the boundary extension first:" + list);
    }
  }
  const OrientabilityVerdict verdict = is_orientable(complex);
  if (!verdict.holds) {
    std::string cycle;
    for (const auto& s : verdict.certificate) cycle += " " + s.str();
    throw PreconditionError("complex is not orientable; negative cycle:" + cycle);
  }

  GraphTypeWalk out;
  out.orientation = verdict.assignment->signs;
  out.walk = graph_type_transition(complex, p);
  const int top = complex.top_dim();
  for (std::size_t i = 0; i < out.walk.space.states.size(); ++i) out.walk.space.states[i].sign = out.orientation[i];
  out.walk.transition = OperatorMatrix(out.walk.space.states, out.walk.space.states, out.walk.transition.values);

  if (all_faces_degree_two(complex)) {
    const Eigen::MatrixXd delta = down_laplacian(complex, top, WeightFunction::normalized(complex)).values;
    Eigen::VectorXd s(delta.rows());
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = out.orientation[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd oriented = s.asDiagonal() * delta * s.asDiagonal();
    const Eigen::MatrixXd expected =
        Eigen::MatrixXd::Identity(delta.rows(), delta.cols()) - (2.0 * (1.0 - p) / (top + 1)) * oriented;
    out.identity_residual = (out.walk.transition.values - expected).cwiseAbs().maxCoeff();
  }
  return out;
}

StationaryResult stationary_distribution(const MarkovWalk& walk, const Distribution& start) {
  if (walk.reversing_measure.size() == 0)
    throw PreconditionError("stationary distribution needs a reversible walk");
  start.validate();
  const Eigen::MatrixXd& p = walk.transition.values;
  if (start.probabilities.size() != p.rows()) throw PreconditionError("distribution size does not match the walk");
  const Eigen::VectorXd& w = walk.reversing_measure;
  const auto eig = linalg::weighted_eigensolve(p, w);
  if (eig.values(0) <= -1.0 + 1e-10)
    throw PreconditionError("walk is periodic (eigenvalue -1); no limit exists for p = " + fmt(walk.laziness));

  Eigen::Index k = 0;
  for (Eigen::Index i = eig.values.size(); i-- > 0;)
    if (eig.values(i) > 1.0 - 1e-10) ++k;
  const Eigen::MatrixXd u = eig.vectors.rightCols(k);

  StationaryResult out;
  out.eigenspace_dim = static_cast<std::size_t>(k);
  out.projection = {w.asDiagonal() * (u * (u.transpose() * start.probabilities))};
  const Eigen::MatrixXd pt = p.transpose();
  Eigen::VectorXd x = start.probabilities;
  out.iteration_converged = false;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd next = pt * x;
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    out.iterations = it + 1;
    if (change < kStepTolerance) {
      out.iteration_converged = true;
      break;
    }
  }
  out.iterated = {x};
  out.agreement = (out.projection.probabilities - x).cwiseAbs().maxCoeff();
  out.warnings = walk.warnings;
  if (!out.iteration_converged) out.warnings.push_back("power iteration did not settle");
  if (out.agreement > kAgreementTolerance)
    out.warnings.push_back("power iteration and spectral projection differ by " + fmt(out.agreement));
  return out;
}

double start_independence(const MarkovWalk& walk) {
  const std::size_t n = walk.space.size();
  std::vector<Eigen::VectorXd> limits;
  for (std::size_t i = 0; i < n; ++i)
    limits.push_back(stationary_distribution(walk, Distribution::point_mass(n, i)).projection.probabilities);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, (limits[i] - limits[j]).cwiseAbs().maxCoeff());
  return worst;
}

// ---- convergence ----

double fit_ratio(const std::vector<double>& distance, std::size_t* used_steps) {
  if (used_steps) *used_steps = 0;
  if (distance.size() < 2 || distance.front() == 0.0) return 0.0;
  const double d0 = distance.front();
  std::size_t last = 0;
  // Below ~1e-8 d0 the distances are dominated by roundoff in the iterates.
  while (last + 1 < distance.size() && distance[last + 1] >= kFitFloor * d0) ++last;
  if (last == 0) {
    if (used_steps) *used_steps = 1;
    return distance[1] / d0;
  }
  if (used_steps) *used_steps = last;
  return std::pow(distance[last] / d0, 1.0 / static_cast<double>(last));
}

ConvergenceTrace up_convergence(const SimplicialComplex& complex, const OrientedSimplex& start, double p,
                                std::size_t steps) {
  check_rate_laziness(p);
  const ExpectationProcess proc = expectation_process_up(complex, start, p, steps);
  const int top = complex.top_dim();
  const WeightFunction w = WeightFunction::normalized(complex);
  const auto s = spectrum(up_laplacian(complex, top - 1, w), w, top - 1);

  ConvergenceTrace trace;
  trace.warnings = proc.warnings;
  trace.lambda = s.smallest_nonzero().value_or(0.0);
  trace.bound = 1.0 - (1.0 - p) * trace.lambda / (p * (top - 1) + 1.0);
  for (const Cochain& e : proc.values)
    trace.distance.push_back(linalg::weighted_norm(e.values() - proc.limit.values(), proc.weights));
  finish_trace(trace);
  return trace;
}

ConvergenceTrace down_convergence(const SimplicialComplex& complex, int d, const OrientedSimplex& start, double p,
                                  std::size_t steps) {
  check_rate_laziness(p);
  const ExpectationProcess proc = expectation_process_down(complex, d, start, p, steps);
  const std::size_t dmax = max_lower_degree(complex, d);
  const auto s = spectrum(down_laplacian(complex, d, WeightFunction::constant_one(complex)));

  ConvergenceTrace trace;
  trace.warnings = proc.warnings;
  trace.lambda = s.smallest_nonzero().value_or(0.0);
  trace.bound = 1.0 - (1.0 - p) * trace.lambda / ((d + 1) * (p * (static_cast<double>(dmax) - 2.0) + 1.0));
  for (const Cochain& e : proc.values)
    trace.distance.push_back(linalg::weighted_norm(e.values() - proc.limit.values(), proc.weights));
  finish_trace(trace);
  return trace;
}

ConvergenceTrace graph_type_convergence(const SimplicialComplex& complex, std::size_t start, double p,
                                        std::size_t steps) {
  check_rate_laziness(p);
  require_top_dim(complex);
  if (!all_faces_degree_two(complex))
    throw PreconditionError("graph-type convergence bound needs every (N-1)-face to have degree 2");
  const MarkovWalk walk = graph_type_transition(complex, p);
  const int top = complex.top_dim();
  const WeightFunction w = WeightFunction::normalized(complex);
  const auto s = spectrum(down_laplacian(complex, top, w), w, top);

  const Distribution mu0 = Distribution::point_mass(walk.space.size(), start);
  const StationaryResult limit = stationary_distribution(walk, mu0);
  const Eigen::VectorXd inv = walk.reversing_measure.cwiseInverse();

  ConvergenceTrace trace;
  trace.warnings = limit.warnings;
  trace.lambda = s.smallest_nonzero().value_or(0.0);
  trace.bound = 1.0 - 2.0 * (1.0 - p) * trace.lambda / (top + 1);
  const Eigen::MatrixXd pt = walk.transition.values.transpose();
  Eigen::VectorXd x = mu0.probabilities;
  for (std::size_t t = 0; t <= steps; ++t) {
    trace.distance.push_back(linalg::weighted_norm(x - limit.projection.probabilities, inv));
    trace.total_variation.push_back(total_variation(x, limit.projection.probabilities));
    x = pt * x;
  }
  finish_trace(trace);
  return trace;
}

ConvergenceTrace graph_walk_convergence(const SimplicialComplex& complex, std::size_t start, double alpha,
                                        std::size_t steps) {
  check_rate_laziness(alpha);
  const MarkovWalk walk = graph_walk(complex, alpha);
  const SimplicialComplex graph = complex.skeleton(1);
  const WeightFunction w = WeightFunction::normalized(graph);
  const auto s = spectrum(up_laplacian(graph, 0, w), w, 0);

  const Distribution mu0 = Distribution::point_mass(walk.space.size(), start);
  const StationaryResult limit = stationary_distribution(walk, mu0);
  const Eigen::VectorXd inv = walk.reversing_measure.cwiseInverse();

  ConvergenceTrace trace;
  trace.warnings = limit.warnings;
  trace.lambda = s.smallest_nonzero().value_or(0.0);
  trace.bound = 1.0 - (1.0 - alpha) * trace.lambda;
  const Eigen::MatrixXd pt = walk.transition.values.transpose();
  Eigen::VectorXd x = mu0.probabilities;
  for (std::size_t t = 0; t <= steps; ++t) {
    trace.distance.push_back(linalg::weighted_norm(x - limit.projection.probabilities, inv));
    trace.total_variation.push_back(total_variation(x, limit.projection.probabilities));
    x = pt * x;
  }
  finish_trace(trace);
  return trace;
}

double graph_type_norm_identity_residual(const SimplicialComplex& complex, double p, std::size_t t_max) {
  check_rate_laziness(p);
  require_top_dim(complex);
  if (!all_faces_degree_two(complex))
    throw PreconditionError("operator-norm identity needs every (N-1)-face to have degree 2");
  const MarkovWalk walk = graph_type_transition(complex, p);
  const int top = complex.top_dim();
  const WeightFunction w = WeightFunction::normalized(complex);
  const auto s = spectrum(down_laplacian(complex, top, w), w, top);
  const double rate = 1.0 - 2.0 * (1.0 - p) * s.smallest_nonzero().value_or(0.0) / (top + 1);

  // theta is constant here, so M is symmetric and the kernel projector orthogonal.
  const Eigen::MatrixXd& m = walk.transition.values;
  const auto eig = spectrum(walk.transition);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 1.0 - 1e-10) ++k;
  const Eigen::MatrixXd u = eig.eigenvectors.rightCols(k);
  const Eigen::MatrixXd proj = u * u.transpose();

  Eigen::MatrixXd power = m;
  double worst = 0.0;
  for (std::size_t t = 1; t <= t_max; ++t) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(power - proj);
    const double norm = svd.singularValues()(0);
    worst = std::max(worst, std::abs(norm - std::pow(rate, static_cast<double>(t))));
    power = power * m;
  }
  return worst;
}

}  // namespace simplicial
