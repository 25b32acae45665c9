#include "simplicial/orientation.hpp"

#include <algorithm>
#include <set>

#include "simplicial/errors.hpp"
#include "simplicial/signed_graph.hpp"

namespace simplicial {

namespace {

OrientabilityVerdict decide(const SimplicialComplex& complex, std::span<const int> initial, AssignmentKind kind) {
  const int n = complex.top_dim();
  if (n < 1) throw PreconditionError("orientability needs a complex of dimension >= 1");
  const SignedGraph graph = down_signed_graph(complex, n, initial);
  const BalanceCertificate cert =
      kind == AssignmentKind::compatible ? is_balanced(graph) : is_antibalanced(graph);

  OrientabilityVerdict out;
  out.components = complex.connected_components(n, Direction::down).size();
  out.holds = cert.balanced;
  if (cert.balanced) {
    OrientationAssignment a;
    a.kind = kind;
    for (const auto& v : cert.switching.apply(graph).vertices()) a.signs.push_back(v.sign());
    if (!verify_assignment(complex, a))
      throw InternalError("signed-graph switching did not yield a valid orientation assignment");
    out.assignment = std::move(a);
  } else {
    for (std::size_t v : cert.negative_cycle) out.certificate.push_back(graph.vertices()[v]);
  }
  return out;
}

}  // namespace

OrientabilityVerdict is_orientable(const SimplicialComplex& complex, std::span<const int> initial) {
  return decide(complex, initial, AssignmentKind::compatible);
}

OrientabilityVerdict is_disorientable(const SimplicialComplex& complex, std::span<const int> initial) {
  return decide(complex, initial, AssignmentKind::disorienting);
}

bool verify_assignment(const SimplicialComplex& complex, const OrientationAssignment& assignment) {
  const int n = complex.top_dim();
  if (n < 1) throw PreconditionError("orientation assignments need a complex of dimension >= 1");
  if (assignment.signs.size() != complex.count(n))
    throw PreconditionError("assignment has the wrong number of signs");
  const int wanted = assignment.kind == AssignmentKind::compatible ? -1 : 1;
  for (std::size_t r = 0; r < complex.count(n - 1); ++r) {
    const OrientedSimplex face(complex.simplex(n - 1, r));
    const auto cof = complex.cofaces(n - 1, r);
    for (std::size_t a = 0; a < cof.size(); ++a)
      for (std::size_t b = a + 1; b < cof.size(); ++b) {
        const int ia = boundary_sign(face, OrientedSimplex(complex.simplex(n, cof[a]), assignment.signs[cof[a]]));
        const int ib = boundary_sign(face, OrientedSimplex(complex.simplex(n, cof[b]), assignment.signs[cof[b]]));
        if (ia * ib != wanted) return false;
      }
  }
  return true;
}

std::vector<Simplex> free_faces(const SimplicialComplex& complex) {
  const int n = complex.top_dim();
  std::vector<Simplex> out;
  if (n < 1) return out;
  for (std::size_t i = 0; i < complex.count(n - 1); ++i)
    if (complex.coface_count(n - 1, i) == 1) out.push_back(complex.simplex(n - 1, i));
  return out;
}

namespace {

ExtendedComplex extend(const SimplicialComplex& complex, const std::vector<Vertex>& existing_caps) {
  const int n = complex.top_dim();
  const std::set<Vertex> caps(existing_caps.begin(), existing_caps.end());
  std::vector<std::vector<Vertex>> facets;
  for (const Simplex& f : complex.facets()) facets.emplace_back(f.vertices().begin(), f.vertices().end());

  ExtendedComplex out{complex, existing_caps, {}};
  Vertex next = complex.max_vertex() + 1;
  for (const Simplex& rho : free_faces(complex)) {
    const bool capped = std::any_of(rho.vertices().begin(), rho.vertices().end(),
                                    [&](Vertex v) { return caps.count(v) > 0; });
    if (capped) continue;
    std::vector<Vertex> cone(rho.vertices().begin(), rho.vertices().end());
    cone.push_back(next);
    out.cap_vertices.push_back(next++);
    facets.push_back(std::move(cone));
  }
  if (out.cap_vertices.size() != existing_caps.size()) out.complex = SimplicialComplex::from_facets(facets);
  for (const Simplex& s : out.complex.simplices(n)) out.original_top.push_back(complex.contains(s));
  return out;
}

}  // namespace

ExtendedComplex extend_closing_boundary(const SimplicialComplex& complex) {
  if (complex.top_dim() < 1) throw PreconditionError("boundary closure needs a complex of dimension >= 1");
  return extend(complex, {});
}

ExtendedComplex extend_closing_boundary(const ExtendedComplex& extended) {
  ExtendedComplex out = extend(extended.complex, extended.cap_vertices);
  // Keep the mask relative to the very first complex.
  for (std::size_t i = 0; i < out.original_top.size(); ++i) {
    const auto prior = extended.complex.index_of(out.complex.simplex(out.complex.top_dim(), i));
    out.original_top[i] = prior && extended.original_top[*prior];
  }
  return out;
}

}  // namespace simplicial
