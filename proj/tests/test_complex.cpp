#include <algorithm>
#include <set>

#include "simplicial/complex.hpp"
#include "simplicial/errors.hpp"
#include "support.hpp"

using namespace simplicial;
using testing::corpus;
using testing::facets;

namespace {

// every nonempty subset of every facet, by bitmask
std::set<std::vector<Vertex>> brute_closure(const std::vector<std::vector<Vertex>>& fs) {
  std::set<std::vector<Vertex>> out;
  for (auto f : fs) {
    std::sort(f.begin(), f.end());
    for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<Vertex> s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      out.insert(s);
    }
  }
  return out;
}

std::set<std::vector<Vertex>> stored(const SimplicialComplex& k) {
  std::set<std::vector<Vertex>> out;
  for (int d = 0; d <= k.top_dim(); ++d)
    for (const auto& s : k.simplices(d)) out.insert({s.vertices().begin(), s.vertices().end()});
  return out;
}

}  // namespace

TEST_CASE("closure of a single triangle") {
  auto k = facets({{0, 1, 2}});
  CHECK(k.top_dim() == 2);
  CHECK(k.count(0) == 3);
  CHECK(k.count(1) == 3);
  CHECK(k.count(2) == 1);
  CHECK(stored(k) == brute_closure({{0, 1, 2}}));
}

TEST_CASE("hollow triangle and tetrahedron boundary counts") {
  auto hollow = facets({{0, 1}, {1, 2}, {0, 2}});
  CHECK(hollow.top_dim() == 1);
  CHECK(hollow.count(1) == 3);

  auto sphere = corpus("sphere");
  CHECK(sphere.top_dim() == 2);
  CHECK(sphere.count(0) == 4);
  CHECK(sphere.count(1) == 6);
  CHECK(sphere.count(2) == 4);
}

TEST_CASE("closure matches subset enumeration on the corpus") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    std::vector<std::vector<Vertex>> fs;
    for (const auto& f : k.facets()) fs.push_back({f.vertices().begin(), f.vertices().end()});
    CHECK_MESSAGE(stored(k) == brute_closure(fs), name);
  }
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(SimplicialComplex::from_facets({}), PreconditionError);
  CHECK_THROWS_AS(facets({{0, 0, 1}}), PreconditionError);
  CHECK_THROWS_AS(facets({{}}), PreconditionError);
}

TEST_CASE("sparse vertex ids and lexicographic order") {
  auto k = facets({{40, 7, 1000}});
  CHECK(k.simplex(0, 0) == Simplex{7});
  CHECK(k.simplex(1, 0) == Simplex{7, 40});
  CHECK(k.simplex(1, 2) == Simplex{40, 1000});
  CHECK(k.max_vertex() == 1000);
}

TEST_CASE("degree") {
  auto sphere = corpus("sphere");
  auto one = WeightFunction::constant_one(sphere);
  CHECK(sphere.degree(Simplex{0, 1}, one) == 2.0);

  auto filled = corpus("filled_triangle");
  CHECK(filled.degree(Simplex{0, 1, 2}, WeightFunction::constant_one(filled)) == 0.0);

  auto hollow = corpus("hollow_triangle");
  CHECK(hollow.degree(Simplex{1, 2}, WeightFunction::constant_one(hollow)) == 0.0);

  CHECK_THROWS_AS(hollow.degree(Simplex{0, 1, 2}, WeightFunction::constant_one(hollow)), PreconditionError);
}

TEST_CASE("degree equals up-adjacency count over d+1 on pure complexes") {
  for (const char* name : {"sphere", "torus7", "filled_triangle", "mobius5", "rp2_6"}) {
    auto k = corpus(name);
    auto one = WeightFunction::constant_one(k);
    for (int d = 0; d < k.top_dim(); ++d)
      for (const auto& s : k.simplices(d))
        CHECK(k.degree(s, one) * (d + 1) == doctest::Approx(k.up_adjacent(s).size()));
  }
}

TEST_CASE("up adjacency") {
  auto filled = corpus("filled_triangle");
  auto adj = filled.up_adjacent(Simplex{0, 1});
  REQUIRE(adj.size() == 2);
  std::vector<Simplex> neighbors = {adj[0].neighbor, adj[1].neighbor};
  std::sort(neighbors.begin(), neighbors.end());
  CHECK(neighbors == std::vector<Simplex>{Simplex{0, 2}, Simplex{1, 2}});
  CHECK(adj[0].shared == Simplex{0, 1, 2});
  CHECK(adj[1].shared == Simplex{0, 1, 2});

  CHECK(corpus("hollow_triangle").up_adjacent(Simplex{0, 1}).empty());
  CHECK(corpus("sphere").up_adjacent(Simplex{0, 1}).size() == 4);
}

TEST_CASE("down adjacency") {
  auto sphere = corpus("sphere");
  auto adj = sphere.down_adjacent(Simplex{0, 1, 2});
  REQUIRE(adj.size() == 3);
  std::set<Simplex> nbrs;
  for (const auto& a : adj) {
    nbrs.insert(a.neighbor);
    CHECK(a.shared.is_face_of(a.neighbor));
    CHECK(a.shared.is_face_of(Simplex{0, 1, 2}));
  }
  CHECK(nbrs == std::set<Simplex>{Simplex{0, 1, 3}, Simplex{0, 2, 3}, Simplex{1, 2, 3}});

  auto disjoint = facets({{0, 1}, {2, 3}});
  CHECK(disjoint.down_adjacent(Simplex{0, 1}).empty());
  CHECK(disjoint.down_adjacent(Simplex{2, 3}).empty());

  auto hollow = corpus("hollow_triangle");
  bool found = false;
  for (const auto& a : hollow.down_adjacent(Simplex{0, 1}))
    if (a.neighbor == Simplex{1, 2}) {
      found = true;
      CHECK(a.shared == Simplex{1});
    }
  CHECK(found);

  CHECK_THROWS_AS(hollow.down_adjacent(Simplex{0}), PreconditionError);
}

TEST_CASE("adjacency never repeats a neighbour") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    for (int d = 0; d <= k.top_dim(); ++d)
      for (const auto& s : k.simplices(d)) {
        std::set<Simplex> up;
        for (const auto& a : k.up_adjacent(s)) CHECK(up.insert(a.neighbor).second);
        if (d == 0) continue;
        std::set<Simplex> down;
        for (const auto& a : k.down_adjacent(s)) CHECK(down.insert(a.neighbor).second);
      }
  }
}

TEST_CASE("connected components") {
  auto sphere = corpus("sphere");
  auto c = sphere.connected_components(2, Direction::down);
  REQUIRE(c.size() == 1);
  CHECK(c[0].size() == 4);

  CHECK(corpus("two_triangles").connected_components(1, Direction::up).size() == 2);
  CHECK(corpus("hollow_triangle").connected_components(1, Direction::down).size() == 1);

  CHECK_THROWS_AS(sphere.connected_components(0, Direction::down), PreconditionError);
  CHECK_THROWS_AS(sphere.connected_components(2, Direction::up), PreconditionError);
}

TEST_CASE("boundary sign examples") {
  const OrientedSimplex tri(Simplex{0, 1, 2});
  CHECK(boundary_sign(OrientedSimplex(Simplex{1, 2}), tri) == 1);
  CHECK(boundary_sign(OrientedSimplex(Simplex{0, 2}), tri) == -1);
  CHECK(boundary_sign(OrientedSimplex(Simplex{0, 1}, -1), tri) == -1);
  CHECK_THROWS_AS(boundary_sign(OrientedSimplex(Simplex{0, 3}), tri), PreconditionError);
}

TEST_CASE("boundary sign flips with either orientation") {
  for (const char* name : {"sphere", "torus7", "rp2_6"}) {
    auto k = corpus(name);
    for (int d = 1; d <= k.top_dim(); ++d)
      for (const auto& s : k.simplices(d))
        for (std::size_t j = 0; j < s.size(); ++j) {
          OrientedSimplex rho(s.face_without(j));
          OrientedSimplex sigma(s);
          if (d >= 2) CHECK(boundary_sign(rho, sigma) * boundary_sign(rho.negated(), sigma) == -1);
          CHECK(boundary_sign(rho, sigma.negated()) == -boundary_sign(rho, sigma));
          // (-1)^j on canonical representatives
          CHECK(boundary_sign(rho, sigma) == (j % 2 ? -1 : 1));
        }
  }
}

TEST_CASE("faces and cofaces are consistent") {
  auto k = corpus("torus7");
  for (int d = 1; d <= k.top_dim(); ++d)
    for (std::size_t i = 0; i < k.count(d); ++i) {
      auto f = k.faces(d, i);
      REQUIRE(f.size() == static_cast<std::size_t>(d + 1));
      for (std::size_t j = 0; j < f.size(); ++j) {
        CHECK(k.simplex(d - 1, f[j]) == k.simplex(d, i).face_without(j));
        auto co = k.cofaces(d - 1, f[j]);
        CHECK(std::find(co.begin(), co.end(), i) != co.end());
      }
    }
}

TEST_CASE("oriented simplex labels") {
  CHECK(parse_oriented_simplex("-[2,0,1]").simplex() == Simplex{0, 1, 2});
  CHECK(parse_oriented_simplex("-[2,0,1]").sign() == -1);
  CHECK(parse_oriented_simplex("+[0,1]").str() == "+[0,1]");
  CHECK(parse_oriented_simplex("3 4").str() == "+[3,4]");
  CHECK(parse_oriented_simplex("[5]").str() == "[5]");
  CHECK_THROWS_AS(parse_oriented_simplex("[a,b]"), PreconditionError);
  CHECK_THROWS_AS(parse_oriented_simplex(""), PreconditionError);
}

TEST_CASE("weights") {
  auto sphere = corpus("sphere");
  auto norm = WeightFunction::normalized(sphere);
  for (std::size_t i = 0; i < sphere.count(2); ++i) CHECK(norm(2, i) == 1.0);
  for (std::size_t i = 0; i < sphere.count(1); ++i) CHECK(norm(1, i) == 2.0);
  // vertex: three edges of weight 2
  for (std::size_t i = 0; i < sphere.count(0); ++i) CHECK(norm(0, i) == 6.0);

  auto rd = WeightFunction::reciprocal_degree(sphere, 1);
  for (std::size_t i = 0; i < sphere.count(1); ++i) CHECK(rd(1, i) == 0.5);
  CHECK(rd(0, 0) == 1.0);

  std::map<Simplex, double> table;
  for (int d = 0; d <= sphere.top_dim(); ++d)
    for (const auto& s : sphere.simplices(d)) table[s] = 1.5;
  CHECK(WeightFunction::from_table(sphere, table)(1, 3) == 1.5);
  table.erase(Simplex{0, 1});
  CHECK_THROWS_AS(WeightFunction::from_table(sphere, table), PreconditionError);
}

TEST_CASE("skeleton and purity") {
  auto sphere = corpus("sphere");
  auto sk = sphere.skeleton(1);
  CHECK(sk.top_dim() == 1);
  CHECK(sk.count(1) == 6);
  CHECK(sphere.is_pure());
  CHECK_FALSE(facets({{0, 1, 2}, {2, 3}}).is_pure());
}
