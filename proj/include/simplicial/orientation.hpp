#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "simplicial/complex.hpp"

namespace simplicial {

enum class AssignmentKind { compatible, disorienting };

/// Sign per canonical N-simplex (relative to the increasing-order representative).
struct OrientationAssignment {
  std::vector<int> signs;
  AssignmentKind kind = AssignmentKind::compatible;
};

/**
 * \brief Outcome of an orientability / disorientability decision.
 *
 * When `holds` is false, `certificate` is a closed chain of N-simplices
 * (oriented by the initial choice) whose signed-graph cycle has the wrong
 * parity. `components` counts the down-connected components at dimension N.
 */
struct OrientabilityVerdict {
  bool holds = false;
  std::optional<OrientationAssignment> assignment;
  std::vector<OrientedSimplex> certificate;
  std::size_t components = 0;
};

/// Balance of the top-dimensional down-signed graph. `initial` defaults to all +1.
OrientabilityVerdict is_orientable(const SimplicialComplex& complex, std::span<const int> initial = {});
/// Antibalance of the same graph.
OrientabilityVerdict is_disorientable(const SimplicialComplex& complex, std::span<const int> initial = {});

/**
 * Direct check of an assignment: every pair of N-simplices sharing an
 * (N-1)-face must induce opposite (compatible) or equal (disorienting)
 * orientations on it. Independent of the signed-graph route.
 */
bool verify_assignment(const SimplicialComplex& complex, const OrientationAssignment& assignment);

/// (N-1)-simplices with exactly one coface.
std::vector<Simplex> free_faces(const SimplicialComplex& complex);

/**
 * A complex with its free faces closed off by cones. `cap_vertices[k]` is the
 * apex added for the k-th closed face; `original_top[i]` tells whether the
 * i-th N-simplex of `complex` was present before extension.
 */
struct ExtendedComplex {
  SimplicialComplex complex;
  std::vector<Vertex> cap_vertices;
  std::vector<bool> original_top;
};

/// One fresh apex per free (N-1)-face rho, adding rho + {apex}.
ExtendedComplex extend_closing_boundary(const SimplicialComplex& complex);
/// Re-extension: faces containing an apex are already closed off and are skipped.
ExtendedComplex extend_closing_boundary(const ExtendedComplex& extended);

}  // namespace simplicial
