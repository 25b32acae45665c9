#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "simplicial/chain.hpp"
#include "simplicial/complex.hpp"

namespace simplicial {

struct SignedEdge {
  std::size_t u;
  std::size_t v;
  int sign;  // +1 or -1

  bool operator==(const SignedEdge&) const = default;
};

/**
 * \brief Graph on oriented simplices with +-1 edge signs.
 *
 * No self-loops and at most one edge per vertex pair. Degrees are edge counts.
 */
class SignedGraph {
 public:
  SignedGraph(std::vector<OrientedSimplex> vertices, std::vector<SignedEdge> edges);

  const std::vector<OrientedSimplex>& vertices() const { return vertices_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::size_t>& degrees() const { return degrees_; }

  /// Every edge sign flipped (the anti-signed graph).
  SignedGraph negated() const;

 private:
  std::vector<OrientedSimplex> vertices_;
  std::vector<SignedEdge> edges_;
  std::vector<std::size_t> degrees_;
};

/// Vertex subset whose incident edge signs (and vertex orientations) get flipped.
struct Switching {
  std::vector<std::size_t> flipped;

  SignedGraph apply(const SignedGraph& graph) const;
};

/**
 * Up-signed graph on d-simplices: an edge whenever two d-simplices share a
 * (d+1)-coface tau, with sign -sgn([s],d[tau]) * sgn([s'],d[tau]).
 * `orientation` gives a sign per canonical d-simplex (empty = all +1).
 */
SignedGraph up_signed_graph(const SimplicialComplex& complex, int d, std::span<const int> orientation = {});

/// Down-signed graph: edges through shared (d-1)-faces rho, sign -sgn([rho],d[s]) * sgn([rho],d[s']).
SignedGraph down_signed_graph(const SimplicialComplex& complex, int d, std::span<const int> orientation = {});

/// L^s = I - D^{-1} A_s; throws if some vertex is isolated.
OperatorMatrix signed_laplacian(const SignedGraph& graph);
/// Degrees as weights under which L^s is self-adjoint.
Eigen::VectorXd signed_laplacian_weights(const SignedGraph& graph);

/**
 * Balance verdict. When balanced, `switching` makes every edge positive;
 * otherwise `negative_cycle` lists vertex indices of a closed walk with an odd
 * number of negative edges (the last vertex connects back to the first).
 */
struct BalanceCertificate {
  bool balanced = false;
  Switching switching;
  std::vector<std::size_t> negative_cycle;
};

BalanceCertificate is_balanced(const SignedGraph& graph);
/// Balance of the negated graph: the cycle has an odd number of positive edges.
BalanceCertificate is_antibalanced(const SignedGraph& graph);

/// Product of edge signs along a closed vertex sequence; throws on a missing edge.
int cycle_sign(const SignedGraph& graph, std::span<const std::size_t> cycle);

/// max |Delta_d^up - ((d+1) L^s - d I)| with normalized weights on the (d+1)-skeleton.
double verify_up_relation(const SimplicialComplex& complex, int d);
/// max |Delta_N^down - ((N+1)/2) L^s|; every (N-1)-simplex must have degree 2.
double verify_down_relation(const SimplicialComplex& complex);

/// One edge per line: "i j s" with s = 1 or -1.
void write_edge_list(std::ostream& out, const SignedGraph& graph);

}  // namespace simplicial
