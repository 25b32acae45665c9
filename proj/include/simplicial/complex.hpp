#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace simplicial {

using Vertex = std::uint64_t;

/**
 * \brief A simplex stored in canonical form: strictly increasing vertex ids.
 *
 * Lexicographic comparison of the vertex tuple gives the ordering used for
 * every row/column index in the library.
 */
class Simplex {
 public:
  Simplex() = default;

  /// Sorts the vertices; throws std::invalid_argument on empty input or duplicates.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// The codimension-one face obtained by deleting the vertex at position `j`.
  Simplex face_without(std::size_t j) const;

  /// Position of `v` in the sorted tuple, if present.
  std::optional<std::size_t> position_of(Vertex v) const;

  bool is_face_of(const Simplex& other) const;

  /// "[0,1,2]"
  std::string str() const;

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;

 private:
  std::vector<Vertex> vertices_;
};

/// Canonical simplex plus a sign relative to the increasing-order representative.
class OrientedSimplex {
 public:
  OrientedSimplex(Simplex simplex, int sign = 1);

  const Simplex& simplex() const { return simplex_; }
  int sign() const { return sign_; }
  OrientedSimplex negated() const { return OrientedSimplex(simplex_, -sign_); }

  /// "+[0,1]" / "-[0,1]"; vertices print without a sign.
  std::string str() const;

  bool operator==(const OrientedSimplex&) const = default;

 private:
  Simplex simplex_;
  int sign_ = 1;
};

/// Parses "[0,1,2]", "+[0,1]", "-[1,2]" or a whitespace separated vertex list.
OrientedSimplex parse_oriented_simplex(const std::string& text);

/**
 * Sign of the incidence between a codimension-one face and a simplex.
 *
 * For sorted sigma = [i_0..i_d] with the face obtained by deleting position j,
 * the boundary operator induces (-1)^j on the sorted face; the stored
 * orientation signs of both arguments multiply in.
 */
int boundary_sign(const OrientedSimplex& face, const OrientedSimplex& simplex);

enum class Direction { up, down };

/// A neighbour of a simplex together with the coface (up) or face (down) they share.
struct Adjacency {
  Simplex neighbor;
  Simplex shared;
};

class WeightFunction;

/**
 * \brief Finite abstract simplicial complex, closed under inclusion.
 *
 * Immutable after construction. Simplices are grouped by dimension and sorted
 * lexicographically; `faces(d, i)[j]` is the index of the face obtained by
 * deleting vertex position `j`, so incidence signs are `(-1)^j`.
 */
class SimplicialComplex {
 public:
  /// Inclusion closure of the given vertex sets.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facets);

  int top_dim() const { return static_cast<int>(simplices_.size()) - 1; }
  std::size_t count(int d) const;
  const std::vector<Simplex>& simplices(int d) const;
  const Simplex& simplex(int d, std::size_t i) const { return simplices(d)[i]; }

  std::optional<std::size_t> index_of(const Simplex& s) const;
  /// Throws std::invalid_argument when `s` is not in the complex.
  std::size_t require_index(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// Indices (dimension d+1) of the cofaces of simplex i of dimension d.
  std::span<const std::size_t> cofaces(int d, std::size_t i) const;
  /// Indices (dimension d-1) of the faces of simplex i; entry j drops vertex j.
  std::span<const std::size_t> faces(int d, std::size_t i) const;

  std::size_t coface_count(int d, std::size_t i) const { return cofaces(d, i).size(); }

  /// Sum of the weights of the (dim+1)-cofaces; 0 for facets.
  double degree(const Simplex& s, const WeightFunction& w) const;

  std::vector<Adjacency> up_adjacent(const Simplex& s) const;
  /// Throws for vertices.
  std::vector<Adjacency> down_adjacent(const Simplex& s) const;

  /// Partition of S_d (as index lists, each sorted, classes ordered by first index).
  std::vector<std::vector<std::size_t>> connected_components(int d, Direction direction) const;

  std::vector<Simplex> facets() const;
  bool is_pure() const;
  /// Largest vertex id.
  Vertex max_vertex() const;

  /// Sub-complex of all simplices of dimension <= k.
  SimplicialComplex skeleton(int k) const;

  bool operator==(const SimplicialComplex& other) const { return simplices_ == other.simplices_; }

 private:
  SimplicialComplex() = default;
  void index_and_link();
  void check_closure() const;

  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
  std::vector<std::vector<std::vector<std::size_t>>> cofaces_;
  std::vector<std::vector<std::vector<std::size_t>>> faces_;
};

enum class WeightKind { constant_one, normalized, reciprocal_degree, explicit_table };

/**
 * \brief Positive weight on every simplex; defines the inner product on cochains.
 *
 * Values are stored per dimension in the complex's canonical order.
 */
class WeightFunction {
 public:
  static WeightFunction constant_one(const SimplicialComplex& complex);
  /// w = 1 on facets and w(s) = deg(s) elsewhere, computed top-down.
  static WeightFunction normalized(const SimplicialComplex& complex);
  /// w(s) = 1/deg(s) on d-simplices with cofaces (counted with unit weights), 1 elsewhere.
  static WeightFunction reciprocal_degree(const SimplicialComplex& complex, int d);
  /// Every simplex of the complex must appear with a positive value.
  static WeightFunction from_table(const SimplicialComplex& complex,
                                   const std::map<Simplex, double>& table);

  WeightKind kind() const { return kind_; }
  int dim_hint() const { return dim_hint_; }
  double operator()(int d, std::size_t i) const { return values_.at(static_cast<std::size_t>(d))[i]; }
  const std::vector<double>& at_dim(int d) const { return values_.at(static_cast<std::size_t>(d)); }
  int top_dim() const { return static_cast<int>(values_.size()) - 1; }

 private:
  WeightFunction(WeightKind kind, std::vector<std::vector<double>> values, int dim_hint = -1);

  WeightKind kind_;
  std::vector<std::vector<double>> values_;
  int dim_hint_ = -1;
};

std::string to_string(WeightKind kind);

}  // namespace simplicial
