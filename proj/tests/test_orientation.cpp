#include <algorithm>
#include <random>
#include <set>

#include "simplicial/errors.hpp"
#include "simplicial/hodge.hpp"
#include "simplicial/orientation.hpp"
#include "simplicial/signed_graph.hpp"
#include "support.hpp"

using namespace simplicial;
using testing::corpus;

namespace {

// exhaustive search for an assignment that passes the pairwise check
bool brute_force(const SimplicialComplex& k, AssignmentKind kind) {
  const std::size_t n = k.count(k.top_dim());
  REQUIRE(n <= 20);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    OrientationAssignment a;
    a.kind = kind;
    for (std::size_t i = 0; i < n; ++i) a.signs.push_back((mask >> i) & 1u ? -1 : 1);
    if (verify_assignment(k, a)) return true;
  }
  return false;
}

double min_signed_eigenvalue(const SimplicialComplex& k) {
  auto g = down_signed_graph(k, k.top_dim());
  return spectrum(signed_laplacian(g), signed_laplacian_weights(g)).eigenvalues.minCoeff();
}

}  // namespace

TEST_CASE("orientability on the corpus") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    auto v = is_orientable(k);
    CHECK_MESSAGE(v.holds == brute_force(k, AssignmentKind::compatible), name);
    auto dv = is_disorientable(k);
    CHECK_MESSAGE(dv.holds == brute_force(k, AssignmentKind::disorienting), name);
    if (v.holds) {
      REQUIRE(v.assignment);
      CHECK(verify_assignment(k, *v.assignment));
      CHECK(v.certificate.empty());
    } else {
      CHECK_FALSE(v.assignment);
      CHECK(v.certificate.size() >= 2);
    }
  }
}

TEST_CASE("orientability examples") {
  auto sphere = is_orientable(corpus("sphere"));
  CHECK(sphere.holds);
  CHECK(sphere.components == 1);
  CHECK(is_orientable(corpus("torus7")).holds);
  CHECK_FALSE(is_orientable(corpus("mobius5")).holds);
  CHECK_FALSE(is_orientable(corpus("rp2_6")).holds);
  CHECK(is_orientable(corpus("two_triangles")).components == 2);
}

TEST_CASE("certificate is a closed chain with the wrong parity") {
  for (const char* name : {"mobius5", "rp2_6"}) {
    auto k = corpus(name);
    auto v = is_orientable(k);
    REQUIRE_FALSE(v.holds);
    auto g = down_signed_graph(k, k.top_dim());
    std::vector<std::size_t> cycle;
    for (const auto& s : v.certificate) cycle.push_back(k.require_index(s.simplex()));
    CHECK(cycle_sign(g, cycle) == -1);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const auto& a = k.simplex(2, cycle[i]);
      const auto& b = k.simplex(2, cycle[(i + 1) % cycle.size()]);
      std::size_t shared = 0;
      for (auto x : a.vertices()) shared += b.position_of(x).has_value();
      CHECK(shared == 2);
    }
  }
}

TEST_CASE("verdict does not depend on the initial orientation") {
  std::mt19937_64 rng(23);
  for (const char* name : {"sphere", "torus7", "mobius5", "rp2_6"}) {
    auto k = corpus(name);
    const bool expected = is_orientable(k).holds;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> init(k.count(2));
      for (auto& s : init) s = (rng() & 1) ? 1 : -1;
      auto v = is_orientable(k, init);
      CHECK(v.holds == expected);
      if (v.holds) CHECK(verify_assignment(k, *v.assignment));
    }
  }
}

TEST_CASE("orientability matches the spectral criterion") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    auto g = down_signed_graph(k, k.top_dim());
    bool isolated = false;
    for (auto d : g.degrees()) isolated |= d == 0;
    if (isolated) continue;
    CHECK_MESSAGE(is_orientable(k).holds == (min_signed_eigenvalue(k) < 1e-8), name);
  }
}

TEST_CASE("a face of degree three blocks orientability") {
  auto k = testing::facets({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  CHECK_FALSE(is_orientable(k).holds);
  CHECK_FALSE(brute_force(k, AssignmentKind::compatible));
}

TEST_CASE("disorientability of graphs is bipartiteness") {
  auto path = is_disorientable(corpus("path3"));
  CHECK(path.holds);
  REQUIRE(path.assignment);
  CHECK(path.assignment->kind == AssignmentKind::disorienting);
  CHECK(verify_assignment(corpus("path3"), *path.assignment));
  CHECK_FALSE(is_disorientable(corpus("odd_cycle")).holds);
  CHECK(is_disorientable(testing::facets({{0, 1}, {1, 2}, {2, 3}, {3, 0}})).holds);
  CHECK_FALSE(is_disorientable(corpus("sphere")).holds);

  // spectral cross-check on the sphere: max eigenvalue of the normalized up Laplacian stays below 3
  auto sphere = corpus("sphere");
  auto w = WeightFunction::normalized(sphere);
  CHECK(spectrum(up_laplacian(sphere, 1, w), w, 1).eigenvalues.maxCoeff() < 3.0 - 1e-8);
}

TEST_CASE("disorientable complex has an antibalanced down graph") {
  auto k = corpus("path3");
  CHECK(is_antibalanced(down_signed_graph(k, 1)).balanced);
}

TEST_CASE("free faces") {
  CHECK(free_faces(corpus("sphere")).empty());
  CHECK(free_faces(corpus("mobius5")).size() == 5);
  auto filled = free_faces(corpus("filled_triangle"));
  CHECK(filled == std::vector<Simplex>{Simplex{0, 1}, Simplex{0, 2}, Simplex{1, 2}});
}

TEST_CASE("boundary closure") {
  auto sphere = corpus("sphere");
  auto es = extend_closing_boundary(sphere);
  CHECK(es.complex == sphere);
  CHECK(es.cap_vertices.empty());

  auto filled = corpus("filled_triangle");
  auto ef = extend_closing_boundary(filled);
  CHECK(ef.complex.count(2) == 4);
  CHECK(ef.complex.count(0) == 6);
  CHECK(ef.cap_vertices == std::vector<Vertex>{3, 4, 5});
  for (const auto& e : filled.simplices(1))
    CHECK(ef.complex.coface_count(1, ef.complex.require_index(e)) == 2);
  CHECK(std::count(ef.original_top.begin(), ef.original_top.end(), true) == 1);

  auto mobius = corpus("mobius5");
  auto em = extend_closing_boundary(mobius);
  CHECK(em.complex.count(2) == 10);
  CHECK(em.cap_vertices.size() == 5);
  CHECK(em.complex.count(0) == 10);
  // original simplices untouched
  for (int d = 0; d <= 2; ++d)
    for (const auto& s : mobius.simplices(d)) CHECK(em.complex.contains(s));
  CHECK_FALSE(is_orientable(em.complex).holds);
}

TEST_CASE("boundary closure is idempotent on its output") {
  for (const char* name : {"filled_triangle", "mobius5", "two_triangles", "path3", "sphere"}) {
    auto once = extend_closing_boundary(corpus(name));
    auto twice = extend_closing_boundary(once);
    CHECK(twice.complex == once.complex);
    CHECK(twice.cap_vertices == once.cap_vertices);
    CHECK(twice.original_top == once.original_top);
  }
}

TEST_CASE("orientation preconditions") {
  auto point = testing::facets({{0}});
  CHECK_THROWS_AS(is_orientable(point), PreconditionError);
  CHECK_THROWS_AS(extend_closing_boundary(point), PreconditionError);
  OrientationAssignment bad{{1, 1}, AssignmentKind::compatible};
  CHECK_THROWS_AS(verify_assignment(corpus("sphere"), bad), PreconditionError);
}
