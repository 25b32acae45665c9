#include "simplicial/complex.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "simplicial/errors.hpp"

namespace simplicial {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw PreconditionError("simplex must have at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw PreconditionError("simplex has duplicate vertices");
}

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::face_without(std::size_t j) const {
  if (vertices_.size() < 2) throw PreconditionError("a vertex has no faces");
  std::vector<Vertex> v;
  v.reserve(vertices_.size() - 1);
  for (std::size_t k = 0; k < vertices_.size(); ++k)
    if (k != j) v.push_back(vertices_[k]);
  Simplex face;
  face.vertices_ = std::move(v);
  return face;
}

std::optional<std::size_t> Simplex::position_of(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

std::string Simplex::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vertices_[i]);
  }
  return out + "]";
}

OrientedSimplex::OrientedSimplex(Simplex simplex, int sign) : simplex_(std::move(simplex)), sign_(sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("orientation sign must be +1 or -1");
  if (simplex_.empty()) throw PreconditionError("oriented simplex needs a non-empty simplex");
  if (simplex_.dim() == 0 && sign != 1) throw PreconditionError("vertices carry no orientation");
}

std::string OrientedSimplex::str() const {
  if (simplex_.dim() == 0) return simplex_.str();
  return (sign_ > 0 ? "+" : "-") + simplex_.str();
}

OrientedSimplex parse_oriented_simplex(const std::string& text) {
  std::string body = text;
  int sign = 1;
  auto first = body.find_first_not_of(" \t");
  if (first == std::string::npos) throw PreconditionError("empty simplex label");
  body = body.substr(first);
  if (body[0] == '+' || body[0] == '-') {
    sign = body[0] == '-' ? -1 : 1;
    body = body.substr(1);
  }
  for (char& c : body)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(body);
  std::vector<Vertex> vertices;
  std::string token;
  while (in >> token) {
    if (!std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw PreconditionError("bad vertex id '" + token + "' in label '" + text + "'");
    vertices.push_back(std::stoull(token));
  }
  // an odd listing order reverses the orientation
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] > vertices[j]) sign = -sign;
  return OrientedSimplex(Simplex(std::move(vertices)), sign);
}

int boundary_sign(const OrientedSimplex& face, const OrientedSimplex& simplex) {
  const Simplex& f = face.simplex();
  const Simplex& s = simplex.simplex();
  if (f.size() + 1 != s.size() || !f.is_face_of(s))
    throw PreconditionError(f.str() + " is not a codimension-one face of " + s.str());
  std::size_t j = 0;
  while (j < f.size() && f[j] == s[j]) ++j;
  const int induced = (j % 2 == 0) ? 1 : -1;
  return induced * face.sign() * simplex.sign();
}

// ---------------------------------------------------------------------------

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& facets) {
  if (facets.empty()) throw PreconditionError("facet list is empty");
  std::vector<std::set<Simplex>> by_dim;
  for (const auto& raw : facets) {
    Simplex facet(raw);
    const std::size_t k = facet.size();
    if (k > 20) throw PreconditionError("facet " + facet.str() + " is too large to close");
    if (by_dim.size() < k) by_dim.resize(k);
    const auto v = facet.vertices();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<Vertex> subset;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1u << b)) subset.push_back(v[b]);
      const std::size_t d = subset.size() - 1;
      by_dim[d].insert(Simplex(std::move(subset)));
    }
  }
  SimplicialComplex complex;
  for (auto& s : by_dim) complex.simplices_.emplace_back(s.begin(), s.end());
  complex.index_and_link();
  complex.check_closure();
  return complex;
}

void SimplicialComplex::index_and_link() {
  const std::size_t n_dims = simplices_.size();
  index_.assign(n_dims, {});
  cofaces_.assign(n_dims, {});
  faces_.assign(n_dims, {});
  for (std::size_t d = 0; d < n_dims; ++d) {
    for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d].emplace(simplices_[d][i], i);
    cofaces_[d].assign(simplices_[d].size(), {});
    faces_[d].assign(simplices_[d].size(), {});
  }
  for (std::size_t d = 1; d < n_dims; ++d) {
    for (std::size_t i = 0; i < simplices_[d].size(); ++i) {
      const Simplex& s = simplices_[d][i];
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto it = index_[d - 1].find(s.face_without(j));
        if (it == index_[d - 1].end()) continue;  // reported by check_closure
        faces_[d][i].push_back(it->second);
        cofaces_[d - 1][it->second].push_back(i);
      }
    }
  }
}

void SimplicialComplex::check_closure() const {
  for (std::size_t d = 1; d < simplices_.size(); ++d)
    for (std::size_t i = 0; i < simplices_[d].size(); ++i)
      if (faces_[d][i].size() != d + 1)
        throw InternalError("complex is not closed under inclusion at " + simplices_[d][i].str());
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > top_dim()) return 0;
  return simplices_[static_cast<std::size_t>(d)].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
  if (d < 0 || d > top_dim())
    throw PreconditionError("dimension " + std::to_string(d) + " outside 0.." + std::to_string(top_dim()));
  return simplices_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  const int d = s.dim();
  if (d < 0 || d > top_dim()) return std::nullopt;
  const auto& idx = index_[static_cast<std::size_t>(d)];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::require_index(const Simplex& s) const {
  auto i = index_of(s);
  if (!i) throw PreconditionError("simplex " + s.str() + " is not in the complex");
  return *i;
}

std::span<const std::size_t> SimplicialComplex::cofaces(int d, std::size_t i) const {
  return cofaces_.at(static_cast<std::size_t>(d)).at(i);
}

std::span<const std::size_t> SimplicialComplex::faces(int d, std::size_t i) const {
  return faces_.at(static_cast<std::size_t>(d)).at(i);
}

double SimplicialComplex::degree(const Simplex& s, const WeightFunction& w) const {
  const std::size_t i = require_index(s);
  const int d = s.dim();
  double total = 0.0;
  for (std::size_t t : cofaces(d, i)) total += w(d + 1, t);
  return total;
}

std::vector<Adjacency> SimplicialComplex::up_adjacent(const Simplex& s) const {
  const std::size_t i = require_index(s);
  const int d = s.dim();
  std::vector<Adjacency> out;
  for (std::size_t t : cofaces(d, i))
    for (std::size_t f : faces(d + 1, t))
      if (f != i) out.push_back({simplex(d, f), simplex(d + 1, t)});
  return out;
}

std::vector<Adjacency> SimplicialComplex::down_adjacent(const Simplex& s) const {
  const std::size_t i = require_index(s);
  const int d = s.dim();
  if (d == 0) throw PreconditionError("vertices have no lower adjacency");
  std::vector<Adjacency> out;
  for (std::size_t r : faces(d, i))
    for (std::size_t c : cofaces(d - 1, r))
      if (c != i) out.push_back({simplex(d, c), simplex(d - 1, r)});
  return out;
}

std::vector<std::vector<std::size_t>> SimplicialComplex::connected_components(int d,
                                                                             Direction direction) const {
  if (direction == Direction::down && (d < 1 || d > top_dim()))
    throw PreconditionError("down connectivity needs 1 <= d <= N, got d=" + std::to_string(d));
  if (direction == Direction::up && (d < 0 || d > top_dim() - 1))
    throw PreconditionError("up connectivity needs 0 <= d <= N-1, got d=" + std::to_string(d));

  const std::size_t n = count(d);
  std::vector<std::size_t> label(n, n);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] != n) continue;
    std::vector<std::size_t> members;
    std::queue<std::size_t> queue;
    queue.push(seed);
    label[seed] = classes.size();
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop();
      members.push_back(cur);
      auto visit = [&](std::size_t nb) {
        if (label[nb] == n) {
          label[nb] = classes.size();
          queue.push(nb);
        }
      };
      if (direction == Direction::up) {
        for (std::size_t t : cofaces(d, cur))
          for (std::size_t f : faces(d + 1, t)) visit(f);
      } else {
        for (std::size_t r : faces(d, cur))
          for (std::size_t c : cofaces(d - 1, r)) visit(c);
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  return classes;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (int d = 0; d <= top_dim(); ++d)
    for (std::size_t i = 0; i < count(d); ++i)
      if (d == top_dim() || cofaces(d, i).empty()) out.push_back(simplex(d, i));
  return out;
}

bool SimplicialComplex::is_pure() const {
  for (int d = 0; d < top_dim(); ++d)
    for (std::size_t i = 0; i < count(d); ++i)
      if (cofaces(d, i).empty()) return false;
  return true;
}

Vertex SimplicialComplex::max_vertex() const { return simplices_[0].back()[0]; }

SimplicialComplex SimplicialComplex::skeleton(int k) const {
  if (k < 0) throw PreconditionError("skeleton dimension must be non-negative");
  SimplicialComplex out;
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k) + 1, simplices_.size());
  out.simplices_.assign(simplices_.begin(), simplices_.begin() + static_cast<std::ptrdiff_t>(keep));
  out.index_and_link();
  return out;
}

// ---------------------------------------------------------------------------

WeightFunction::WeightFunction(WeightKind kind, std::vector<std::vector<double>> values, int dim_hint)
    : kind_(kind), values_(std::move(values)), dim_hint_(dim_hint) {
  for (const auto& per_dim : values_)
    for (double v : per_dim)
      if (!(v > 0.0)) throw PreconditionError("weights must be strictly positive");
}

WeightFunction WeightFunction::constant_one(const SimplicialComplex& complex) {
  std::vector<std::vector<double>> values;
  for (int d = 0; d <= complex.top_dim(); ++d) values.emplace_back(complex.count(d), 1.0);
  return WeightFunction(WeightKind::constant_one, std::move(values));
}

WeightFunction WeightFunction::normalized(const SimplicialComplex& complex) {
  const int n = complex.top_dim();
  std::vector<std::vector<double>> values(static_cast<std::size_t>(n) + 1);
  for (int d = n; d >= 0; --d) {
    auto& cur = values[static_cast<std::size_t>(d)];
    cur.assign(complex.count(d), 1.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto cof = complex.cofaces(d, i);
      if (cof.empty()) continue;
      double deg = 0.0;
      for (std::size_t t : cof) deg += values[static_cast<std::size_t>(d) + 1][t];
      cur[i] = deg;
    }
  }
  return WeightFunction(WeightKind::normalized, std::move(values));
}

WeightFunction WeightFunction::reciprocal_degree(const SimplicialComplex& complex, int d) {
  if (d < 0 || d > complex.top_dim())
    throw PreconditionError("reciprocal-degree dimension out of range: " + std::to_string(d));
  std::vector<std::vector<double>> values;
  for (int k = 0; k <= complex.top_dim(); ++k) values.emplace_back(complex.count(k), 1.0);
  auto& at = values[static_cast<std::size_t>(d)];
  for (std::size_t i = 0; i < at.size(); ++i) {
    const auto deg = complex.coface_count(d, i);
    if (deg >= 1) at[i] = 1.0 / static_cast<double>(deg);
  }
  return WeightFunction(WeightKind::reciprocal_degree, std::move(values), d);
}

WeightFunction WeightFunction::from_table(const SimplicialComplex& complex,
                                          const std::map<Simplex, double>& table) {
  std::vector<std::vector<double>> values;
  for (int d = 0; d <= complex.top_dim(); ++d) {
    std::vector<double> cur;
    for (const Simplex& s : complex.simplices(d)) {
      auto it = table.find(s);
      if (it == table.end()) throw PreconditionError("weight table has no entry for " + s.str());
      cur.push_back(it->second);
    }
    values.push_back(std::move(cur));
  }
  return WeightFunction(WeightKind::explicit_table, std::move(values));
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant_one: return "one";
    case WeightKind::normalized: return "normalized";
    case WeightKind::reciprocal_degree: return "recip-deg";
    case WeightKind::explicit_table: return "table";
  }
  return "unknown";
}

}  // namespace simplicial
