#include <random>

#include "simplicial/chain.hpp"
#include "simplicial/errors.hpp"
#include "support.hpp"

using namespace simplicial;
using testing::corpus;

TEST_CASE("boundary of the filled triangle") {
  auto k = corpus("filled_triangle");
  auto b = boundary_matrix(k, 2);
  REQUIRE(b.values.rows() == 3);
  REQUIRE(b.values.cols() == 1);
  // rows [0,1], [0,2], [1,2]
  CHECK(b.values(0, 0) == 1);
  CHECK(b.values(1, 0) == -1);
  CHECK(b.values(2, 0) == 1);
}

TEST_CASE("hollow triangle vertex-edge incidence") {
  auto b = boundary_matrix(corpus("hollow_triangle"), 1);
  REQUIRE(b.values.rows() == 3);
  for (Eigen::Index j = 0; j < b.values.cols(); ++j) {
    int plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < b.values.rows(); ++i) {
      plus += b.values(i, j) == 1;
      minus += b.values(i, j) == -1;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
  }
}

TEST_CASE("boundary range checks") {
  auto k = corpus("filled_triangle");
  CHECK_THROWS_AS(boundary_matrix(k, 0), PreconditionError);
  CHECK_THROWS_AS(boundary_matrix(k, 3), PreconditionError);
  CHECK_THROWS_AS(coboundary_matrix(k, 2), PreconditionError);
  CHECK_THROWS_AS(coboundary_matrix(k, -1), PreconditionError);
}

TEST_CASE("boundary entries follow the alternating face rule") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    for (int d = 1; d <= k.top_dim(); ++d) {
      auto b = boundary_matrix(k, d);
      IntegerMatrix expected = IntegerMatrix::Zero(k.count(d - 1), k.count(d));
      for (std::size_t i = 0; i < k.count(d); ++i) {
        const auto& s = k.simplex(d, i);
        for (std::size_t j = 0; j < s.size(); ++j)
          expected(static_cast<Eigen::Index>(k.require_index(s.face_without(j))), static_cast<Eigen::Index>(i)) =
              j % 2 ? -1 : 1;
      }
      CHECK_MESSAGE(b.values == expected, name);
    }
  }
}

TEST_CASE("boundary of boundary vanishes exactly") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    for (int d = 2; d <= k.top_dim(); ++d) {
      IntegerMatrix bb = boundary_matrix(k, d - 1).values * boundary_matrix(k, d).values;
      CHECK_MESSAGE(bb.cwiseAbs().maxCoeff() == 0, name);
    }
    for (int d = 0; d + 2 <= k.top_dim(); ++d) {
      IntegerMatrix dd = coboundary_matrix(k, d + 1).values * coboundary_matrix(k, d).values;
      CHECK_MESSAGE(dd.cwiseAbs().maxCoeff() == 0, name);
    }
  }
}

TEST_CASE("coboundary is the transposed boundary") {
  for (const auto& name : testing::corpus_names()) {
    auto k = corpus(name);
    for (int d = 0; d < k.top_dim(); ++d) {
      IntegerMatrix t = boundary_matrix(k, d + 1).values.transpose();
      CHECK(coboundary_matrix(k, d).values == t);
    }
  }
}

TEST_CASE("coboundary of a vertex indicator on the hollow triangle") {
  auto k = corpus("hollow_triangle");
  auto f = Cochain::indicator(k, OrientedSimplex(Simplex{1}));
  Eigen::VectorXd g = coboundary_matrix(k, 0).to_real().values * f.values();
  // edges [0,1], [0,2], [1,2]
  CHECK(g(0) == 1.0);
  CHECK(g(1) == 0.0);
  CHECK(g(2) == -1.0);
}

TEST_CASE("inner products") {
  auto sphere = corpus("sphere");
  auto one = WeightFunction::constant_one(sphere);
  auto e = Cochain::indicator(sphere, OrientedSimplex(Simplex{0, 1}));
  auto e2 = Cochain::indicator(sphere, OrientedSimplex(Simplex{0, 2}));
  CHECK(inner_product(e, e, one) == 1.0);
  CHECK(inner_product(e, e2, one) == 0.0);

  Cochain ones(1, Eigen::VectorXd::Ones(6));
  CHECK(inner_product(ones, ones, WeightFunction::normalized(sphere)) == doctest::Approx(12.0));

  auto v = Cochain::indicator(sphere, OrientedSimplex(Simplex{0}));
  CHECK_THROWS_AS(inner_product(e, v, one), PreconditionError);
}

TEST_CASE("cochain antisymmetry") {
  auto k = corpus("filled_triangle");
  auto f = Cochain::indicator(k, OrientedSimplex(Simplex{0, 2}, -1));
  CHECK(f.evaluate(k, OrientedSimplex(Simplex{0, 2})) == -1.0);
  CHECK(f.evaluate(k, OrientedSimplex(Simplex{0, 2}, -1)) == 1.0);
  CHECK(f.evaluate(k, OrientedSimplex(Simplex{0, 1})) == 0.0);
}

TEST_CASE("adjoint coboundary") {
  auto filled = corpus("filled_triangle");
  auto one = WeightFunction::constant_one(filled);
  Eigen::MatrixXd plain = coboundary_matrix(filled, 1).to_real().values.transpose();
  CHECK((adjoint_coboundary_matrix(filled, 1, one).values - plain).cwiseAbs().maxCoeff() == 0.0);

  // basis-pair check of <delta f, g> = <f, delta* g>
  auto w = WeightFunction::normalized(filled);
  for (int d = 0; d < filled.top_dim(); ++d) {
    Eigen::MatrixXd delta = coboundary_matrix(filled, d).to_real().values;
    Eigen::MatrixXd adj = adjoint_coboundary_matrix(filled, d, w).values;
    for (std::size_t i = 0; i < filled.count(d); ++i)
      for (std::size_t j = 0; j < filled.count(d + 1); ++j) {
        double lhs = w(d + 1, j) * delta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        double rhs = w(d, i) * adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
      }
  }

  // reciprocal-degree weights on the sphere at d=1: delta*_1 = W_1^{-1} boundary_2
  auto sphere = corpus("sphere");
  auto rd = WeightFunction::reciprocal_degree(sphere, 1);
  Eigen::MatrixXd expected = 2.0 * boundary_matrix(sphere, 2).to_real().values;
  CHECK((adjoint_coboundary_matrix(sphere, 1, rd).values - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("adjointness with random cochains") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (const char* name : {"sphere", "torus7", "mobius5", "rp2_6"}) {
    auto k = corpus(name);
    for (auto w : {WeightFunction::constant_one(k), WeightFunction::normalized(k)})
      for (int d = 0; d < k.top_dim(); ++d) {
        Eigen::VectorXd f(static_cast<Eigen::Index>(k.count(d))), g(static_cast<Eigen::Index>(k.count(d + 1)));
        for (auto& x : f) x = gauss(rng);
        for (auto& x : g) x = gauss(rng);
        Cochain df(d + 1, coboundary_matrix(k, d).to_real().values * f);
        Cochain adg(d, adjoint_coboundary_matrix(k, d, w).values * g);
        double lhs = inner_product(df, Cochain(d + 1, g), w);
        double rhs = inner_product(Cochain(d, f), adg, w);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
      }
  }
}

TEST_CASE("labels") {
  auto k = corpus("hollow_triangle");
  auto labels = oriented_labels(k, 1, true);
  REQUIRE(labels.size() == 7);
  CHECK(labels[0].str() == "+[0,1]");
  CHECK(labels[3].str() == "-[0,1]");
  CHECK(labels[6].str() == "death");
  CHECK(canonical_labels(k, 0)[2].str() == "[2]");
}

TEST_CASE("operator matrix rejects bad shapes and duplicate labels") {
  auto k = corpus("hollow_triangle");
  auto l = canonical_labels(k, 1);
  CHECK_THROWS_AS(OperatorMatrix(l, l, Eigen::MatrixXd::Zero(2, 3)), PreconditionError);
  Labels dup = {l[0], l[0], l[1]};
  CHECK_THROWS_AS(OperatorMatrix(dup, l, Eigen::MatrixXd::Zero(3, 3)), PreconditionError);
}
