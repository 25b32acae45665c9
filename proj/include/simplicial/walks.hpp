#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simplicial/chain.hpp"
#include "simplicial/complex.hpp"

namespace simplicial {

enum class StateKind { vertices, oriented, oriented_with_death, top_simplices };

std::string to_string(StateKind kind);

/// Ordered walk states. Oriented kinds list +s_0..+s_{n-1}, -s_0..-s_{n-1}, then the death state.
struct WalkStateSpace {
  StateKind kind = StateKind::vertices;
  int dim = 0;
  Labels states;

  std::size_t size() const { return states.size(); }
  /// Number of distinct underlying simplices.
  std::size_t simplex_count() const;
  /// Index of the state whose label prints as `text` ("+[0,1]", "[2]", "death", ...).
  std::size_t find(const std::string& text) const;
};

struct WalkConfig {
  double laziness = 0.5;
  int dim = -1;  // -1: the walk's natural dimension
  std::size_t steps = 100;
  std::uint64_t seed = 0;
  std::size_t chains = 1000;

  /// Throws unless p is in [0, 1] and chains >= 1.
  void validate() const;
};

/// Probability vector over a state space.
struct Distribution {
  Eigen::VectorXd probabilities;

  static Distribution point_mass(std::size_t states, std::size_t index);
  /// Throws on negative entries or a total differing from 1 by more than 1e-12.
  void validate() const;
};

/**
 * \brief A discrete-time Markov chain with labelled states.
 *
 * `transition` is row-stochastic: entry (i, j) is the probability of moving
 * from state i to state j. `reversing_measure` is set when the chain is
 * reversible (pi_i P_ij = pi_j P_ji); it is empty otherwise.
 */
struct MarkovWalk {
  WalkStateSpace space;
  OperatorMatrix transition;
  Eigen::VectorXd reversing_measure;
  double laziness = 0.0;
  std::vector<std::string> warnings;

  /// Distribution after `steps` steps from `start`.
  Distribution evolve(const Distribution& start, std::size_t steps) const;
  /// max_i |sum_j P_ij - 1| and a check that entries are non-negative.
  double stochasticity_defect() const;
};

// ---- graph walk (vertices of the 1-skeleton) ----

/// Stay with probability alpha, else move to a uniformly chosen neighbour.
MarkovWalk graph_walk(const SimplicialComplex& complex, double alpha);
/// max |P - (I - (1-alpha) Delta_0)| with Delta_0 the normalized graph Laplacian.
double graph_walk_identity_residual(const SimplicialComplex& complex, double alpha);

// ---- up walk on oriented (N-1)-simplices ----

/**
 * Stay with probability p; otherwise pick one of the N deg(s) co-neighbours
 * uniformly, i.e. the orientations of the other faces of a coface that induce
 * the same orientation on the shared (N-2)-face. For N = 1 the states are
 * formal copies +v / -v of the vertices.
 */
MarkovWalk up_walk(const SimplicialComplex& complex, double p);

struct UpTransitionOperator {
  OperatorMatrix a;          // expectation propagator on canonical (N-1)-simplices
  OperatorMatrix laplacian;  // chain up Laplacian with reciprocal-degree weights
  Eigen::VectorXd weights;   // 1/deg, under which both are self-adjoint
  double top_eigenvalue = 0.0;  // (p(N-1)+1)/N
  double residual = 0.0;        // max |A - (top I - ((1-p)/N) L)|
};

UpTransitionOperator up_transition_operator(const SimplicialComplex& complex, double p);

// ---- down (Dirichlet) walk on oriented d-simplices ----

/// Max number of d-simplices sharing a (d-1)-face (the walk's D_max).
std::size_t max_lower_degree(const SimplicialComplex& complex, int d);

/**
 * Stay with probability p; move to each lower neighbour with opposite induced
 * orientation on the shared face with probability (1-p)/((D_max-1)(d+1)); the
 * remaining mass goes to the absorbing death state (last state).
 */
MarkovWalk down_walk(const SimplicialComplex& complex, int d, double p);

struct DownPropagation {
  OperatorMatrix oriented_table;  // 2n x 2n, antisymmetric under negation of either label
  OperatorMatrix b;               // canonical block
  OperatorMatrix laplacian;       // L_d^down with constant-one weights
  std::size_t d_max = 0;
  double diagonal_coefficient = 0.0;  // (p(D_max-2)+1)/(D_max-1)
  double coupling = 0.0;              // (1-p)/((d+1)(D_max-1))
  double residual = 0.0;              // max |B - (c I - q L)|
};

DownPropagation down_propagation_matrix(const SimplicialComplex& complex, int d, double p);

/// T: R^{2n+1} -> R^n, (Tf)[s] = f(+s) - f(-s). The death coordinate is dropped.
OperatorMatrix antisymmetrizer(const SimplicialComplex& complex, int d, bool with_death = true);

/// max over t <= t_max of max |T (P^T)^t - B^t T|.
double intertwining_residual(const SimplicialComplex& complex, int d, double p, std::size_t t_max);

// ---- normalized expectation processes ----

struct ExpectationProcess {
  std::vector<Cochain> values;  // E_0 .. E_T
  double scale = 1.0;           // per-step factor
  Cochain limit{0, Eigen::VectorXd()};
  Eigen::VectorXd weights;       // norm used for distances
  double iteration_gap = 0.0;    // |iterated limit - eigenprojection| (max-abs)
  bool iteration_converged = false;
  std::vector<std::string> warnings;
};

/// Scaled iteration of A from the signed indicator of `start` (an oriented (N-1)-simplex).
ExpectationProcess expectation_process_up(const SimplicialComplex& complex, const OrientedSimplex& start, double p,
                                          std::size_t steps);
ExpectationProcess expectation_process_down(const SimplicialComplex& complex, int d, const OrientedSimplex& start,
                                            double p, std::size_t steps);

/// Warning text when p lies outside the guaranteed-convergence interval; nullopt otherwise.
std::optional<std::string> up_laziness_warning(int top_dim, double p);
std::optional<std::string> down_laziness_warning(std::size_t d_max, double p);

/**
 * Homology read off the walk limits over every canonical start: the rank of
 * the harmonic projections and whether every limit lies in the trivial part
 * (exact for the up walk, coexact for the down walk).
 */
struct HomologyDetection {
  std::size_t span_dim = 0;
  std::size_t betti = 0;
  bool all_trivial = true;
  double max_trivial_residual = 0.0;
  std::vector<double> residuals;  // per canonical start
  double rank_tolerance = 1e-8;
};

HomologyDetection detect_homology_up(const SimplicialComplex& complex, double p);
HomologyDetection detect_homology_down(const SimplicialComplex& complex, int d, double p);

// ---- graph-type walk on N-simplices ----

/// Orientation-free transition: stay p, else (1-p)/theta to each N-simplex sharing a non-free face.
MarkovWalk graph_type_transition(const SimplicialComplex& complex, double p);

struct GraphTypeOptions {
  bool allow_free_faces = false;
};

struct GraphTypeWalk {
  MarkovWalk walk;                   // states labelled with a compatible orientation
  std::vector<int> orientation;      // sign per canonical N-simplex
  std::optional<double> identity_residual;  // when every (N-1)-face has degree 2
};

/// Requires an orientable complex whose (N-1)-faces have degree 2 (or <= 2 with allow_free_faces).
GraphTypeWalk graph_type_down_walk(const SimplicialComplex& complex, double p, GraphTypeOptions options = {});

struct StationaryResult {
  Distribution projection;   // spectral projection onto the eigenvalue-1 eigenspace
  Distribution iterated;     // power iteration
  std::size_t iterations = 0;
  bool iteration_converged = false;
  double agreement = 0.0;    // max |projection - iterated|
  std::size_t eigenspace_dim = 0;
  std::vector<std::string> warnings;
};

/// Limit of the walk from `start`; needs a reversing measure. Periodic chains are rejected.
StationaryResult stationary_distribution(const MarkovWalk& walk, const Distribution& start);

/// Max pairwise max-abs difference between the limits from every point-mass start.
double start_independence(const MarkovWalk& walk);

// ---- convergence ----

struct ConvergenceTrace {
  std::vector<double> distance;     // natural weighted l2 distance to the limit
  std::vector<double> total_variation;  // probability walks only
  std::vector<double> bound_curve;  // distance[0] * bound^t
  double fitted_ratio = 0.0;
  std::size_t fit_steps = 0;
  double bound = 1.0;
  double lambda = 0.0;
  double tolerance = 1e-6;
  std::vector<std::string> warnings;

  bool within_bound() const { return fitted_ratio <= bound + tolerance; }
};

/// Geometric ratio (d_T / d_0)^(1/T) using steps until the distance falls below 1e-8 d_0.
double fit_ratio(const std::vector<double>& distance, std::size_t* used_steps = nullptr);

ConvergenceTrace up_convergence(const SimplicialComplex& complex, const OrientedSimplex& start, double p,
                                std::size_t steps);
ConvergenceTrace down_convergence(const SimplicialComplex& complex, int d, const OrientedSimplex& start, double p,
                                  std::size_t steps);
ConvergenceTrace graph_type_convergence(const SimplicialComplex& complex, std::size_t start, double p,
                                        std::size_t steps);
ConvergenceTrace graph_walk_convergence(const SimplicialComplex& complex, std::size_t start, double alpha,
                                        std::size_t steps);

/// max over t in 1..t_max of | ||M^t - P_ker|| - (1 - 2(1-p) lambda_N/(N+1))^t |.
double graph_type_norm_identity_residual(const SimplicialComplex& complex, double p, std::size_t t_max);

}  // namespace simplicial
