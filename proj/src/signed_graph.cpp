#include "simplicial/signed_graph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <set>
#include <utility>

#include "simplicial/errors.hpp"
#include "simplicial/hodge.hpp"

namespace simplicial {

SignedGraph::SignedGraph(std::vector<OrientedSimplex> vertices, std::vector<SignedEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), degrees_(vertices_.size(), 0) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges_) {
    if (e.u == e.v) throw PreconditionError("signed graph edge is a self-loop");
    if (e.u >= vertices_.size() || e.v >= vertices_.size())
      throw PreconditionError("signed graph edge refers to a missing vertex");
    if (e.sign != 1 && e.sign != -1) throw PreconditionError("edge sign must be +1 or -1");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) throw PreconditionError("signed graph has a repeated edge");
    ++degrees_[e.u];
    ++degrees_[e.v];
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const SignedEdge& a, const SignedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

SignedGraph SignedGraph::negated() const {
  auto edges = edges_;
  for (auto& e : edges) e.sign = -e.sign;
  return SignedGraph(vertices_, std::move(edges));
}

SignedGraph Switching::apply(const SignedGraph& graph) const {
  std::vector<bool> flip(graph.vertex_count(), false);
  for (std::size_t v : flipped) flip.at(v) = !flip.at(v);
  auto vertices = graph.vertices();
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (flip[v] && vertices[v].simplex().dim() > 0) vertices[v] = vertices[v].negated();
  auto edges = graph.edges();
  for (auto& e : edges)
    if (flip[e.u] != flip[e.v]) e.sign = -e.sign;
  return SignedGraph(std::move(vertices), std::move(edges));
}

namespace {

std::vector<int> resolve_orientation(const SimplicialComplex& complex, int d, std::span<const int> orientation) {
  const std::size_t n = complex.count(d);
  if (orientation.empty()) return std::vector<int>(n, 1);
  if (orientation.size() != n)
    throw PreconditionError("orientation choice has " + std::to_string(orientation.size()) +
                            " entries, expected " + std::to_string(n));
  for (int s : orientation) {
    if (s != 1 && s != -1) throw PreconditionError("orientation signs must be +1 or -1");
    if (d == 0 && s != 1) throw PreconditionError("vertices cannot be reoriented");
  }
  return {orientation.begin(), orientation.end()};
}

std::vector<OrientedSimplex> oriented_vertices(const SimplicialComplex& complex, int d,
                                               const std::vector<int>& signs) {
  std::vector<OrientedSimplex> out;
  for (std::size_t i = 0; i < complex.count(d); ++i) out.emplace_back(complex.simplex(d, i), signs[i]);
  return out;
}

// Position j with faces(d, s)[j] == face.
int incidence(const SimplicialComplex& complex, int d, std::size_t s, std::size_t face) {
  const auto faces = complex.faces(d, s);
  for (std::size_t j = 0; j < faces.size(); ++j)
    if (faces[j] == face) return (j % 2 == 0) ? 1 : -1;
  throw InternalError("face lookup failed");
}

}  // namespace

SignedGraph up_signed_graph(const SimplicialComplex& complex, int d, std::span<const int> orientation) {
  if (d < 0 || d > complex.top_dim() - 1)
    throw PreconditionError("up-signed graph needs 0 <= d <= N-1, got d=" + std::to_string(d));
  const auto signs = resolve_orientation(complex, d, orientation);
  std::vector<SignedEdge> edges;
  for (std::size_t t = 0; t < complex.count(d + 1); ++t) {
    const auto faces = complex.faces(d + 1, t);
    for (std::size_t j = 0; j < faces.size(); ++j) {
      for (std::size_t k = j + 1; k < faces.size(); ++k) {
        const int sj = signs[faces[j]] * ((j % 2 == 0) ? 1 : -1);
        const int sk = signs[faces[k]] * ((k % 2 == 0) ? 1 : -1);
        edges.push_back({faces[j], faces[k], -sj * sk});
      }
    }
  }
  return SignedGraph(oriented_vertices(complex, d, signs), std::move(edges));
}

SignedGraph down_signed_graph(const SimplicialComplex& complex, int d, std::span<const int> orientation) {
  if (d < 1 || d > complex.top_dim())
    throw PreconditionError("down-signed graph needs 1 <= d <= N, got d=" + std::to_string(d));
  const auto signs = resolve_orientation(complex, d, orientation);
  std::vector<SignedEdge> edges;
  for (std::size_t r = 0; r < complex.count(d - 1); ++r) {
    const auto cof = complex.cofaces(d - 1, r);
    for (std::size_t a = 0; a < cof.size(); ++a) {
      for (std::size_t b = a + 1; b < cof.size(); ++b) {
        const int sa = signs[cof[a]] * incidence(complex, d, cof[a], r);
        const int sb = signs[cof[b]] * incidence(complex, d, cof[b], r);
        edges.push_back({cof[a], cof[b], -sa * sb});
      }
    }
  }
  return SignedGraph(oriented_vertices(complex, d, signs), std::move(edges));
}

OperatorMatrix signed_laplacian(const SignedGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  const auto& deg = graph.degrees();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (deg[v] == 0) throw PreconditionError("signed Laplacian undefined: isolated vertex " + graph.vertices()[v].str());
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
  for (const auto& e : graph.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    l(u, v) -= e.sign / static_cast<double>(deg[e.u]);
    l(v, u) -= e.sign / static_cast<double>(deg[e.v]);
  }
  Labels labels;
  for (const auto& o : graph.vertices()) labels.push_back({o.simplex(), o.sign(), false});
  return OperatorMatrix(labels, labels, std::move(l));
}

Eigen::VectorXd signed_laplacian_weights(const SignedGraph& graph) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(graph.vertex_count()));
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    w(static_cast<Eigen::Index>(v)) = static_cast<double>(graph.degrees()[v]);
  return w;
}

BalanceCertificate is_balanced(const SignedGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (const auto& e : graph.edges()) {
    adj[e.u].emplace_back(e.v, e.sign);
    adj[e.v].emplace_back(e.u, e.sign);
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<int> potential(n, 0);
  std::vector<std::size_t> parent(n, kNone);
  std::vector<std::size_t> depth(n, 0);

  for (std::size_t root = 0; root < n; ++root) {
    if (potential[root] != 0) continue;
    potential[root] = 1;
    std::queue<std::size_t> queue;
    queue.push(root);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (auto [v, sign] : adj[u]) {
        if (potential[v] == 0) {
          potential[v] = sign * potential[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push(v);
          continue;
        }
        if (potential[v] == sign * potential[u]) continue;
        // Inconsistent edge u-v: close it with the two tree paths.
        std::vector<std::size_t> up_u{u}, up_v{v};
        std::size_t a = u, b = v;
        while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
        while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
        while (a != b) {
          up_u.push_back(a = parent[a]);
          up_v.push_back(b = parent[b]);
        }
        up_v.pop_back();  // common ancestor already in up_u
        BalanceCertificate cert;
        cert.negative_cycle = up_u;
        cert.negative_cycle.insert(cert.negative_cycle.end(), up_v.rbegin(), up_v.rend());
        return cert;
      }
    }
  }
  BalanceCertificate cert;
  cert.balanced = true;
  for (std::size_t v = 0; v < n; ++v)
    if (potential[v] < 0) cert.switching.flipped.push_back(v);
  return cert;
}

BalanceCertificate is_antibalanced(const SignedGraph& graph) { return is_balanced(graph.negated()); }

int cycle_sign(const SignedGraph& graph, std::span<const std::size_t> cycle) {
  if (cycle.size() < 2) throw PreconditionError("cycle needs at least two vertices");
  int product = 1;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    std::size_t u = cycle[i], v = cycle[(i + 1) % cycle.size()];
    if (u > v) std::swap(u, v);
    auto it = std::find_if(graph.edges().begin(), graph.edges().end(),
                           [&](const SignedEdge& e) { return e.u == u && e.v == v; });
    if (it == graph.edges().end()) throw PreconditionError("cycle uses a missing edge");
    product *= it->sign;
  }
  return product;
}

double verify_up_relation(const SimplicialComplex& complex, int d) {
  if (d < 0 || d > complex.top_dim() - 1)
    throw PreconditionError("up relation needs 0 <= d <= N-1, got d=" + std::to_string(d));
  const SimplicialComplex skeleton = complex.skeleton(d + 1);
  for (std::size_t i = 0; i < skeleton.count(d); ++i)
    if (skeleton.coface_count(d, i) == 0)
      throw PreconditionError("complex is not pure of dimension " + std::to_string(d + 1) + ": " +
                              skeleton.simplex(d, i).str() + " has no coface");

  const WeightFunction w = WeightFunction::normalized(skeleton);
  const Eigen::MatrixXd delta = up_laplacian(skeleton, d, w).values;
  const SignedGraph graph = up_signed_graph(skeleton, d);
  for (std::size_t i = 0; i < skeleton.count(d); ++i)
    if (graph.degrees()[i] != static_cast<std::size_t>(d + 1) * skeleton.coface_count(d, i))
      throw InternalError("up-signed graph degree differs from (d+1) deg at " + skeleton.simplex(d, i).str());
  const Eigen::MatrixXd ls = signed_laplacian(graph).values;
  const auto n = ls.rows();
  return (delta - ((d + 1) * ls - d * Eigen::MatrixXd::Identity(n, n))).cwiseAbs().maxCoeff();
}

double verify_down_relation(const SimplicialComplex& complex) {
  const int n = complex.top_dim();
  if (n < 1) throw PreconditionError("down relation needs N >= 1");
  std::string offenders;
  for (std::size_t i = 0; i < complex.count(n - 1); ++i)
    if (complex.coface_count(n - 1, i) != 2)
      offenders += " " + complex.simplex(n - 1, i).str() + "(deg " + std::to_string(complex.coface_count(n - 1, i)) + ")";
  if (!offenders.empty())
    throw PreconditionError("every (N-1)-simplex must have degree 2; offenders:" + offenders);
  const WeightFunction w = WeightFunction::normalized(complex);
  const Eigen::MatrixXd delta = down_laplacian(complex, n, w).values;
  const Eigen::MatrixXd ls = signed_laplacian(down_signed_graph(complex, n)).values;
  return (delta - 0.5 * (n + 1) * ls).cwiseAbs().maxCoeff();
}

void write_edge_list(std::ostream& out, const SignedGraph& graph) {
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.sign << '\n';
}

}  // namespace simplicial
