#include "simplicial/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "simplicial/chain.hpp"
#include "simplicial/errors.hpp"
#include "simplicial/hodge.hpp"
#include "simplicial/io.hpp"
#include "simplicial/linalg.hpp"
#include "simplicial/monte_carlo.hpp"
#include "simplicial/orientation.hpp"
#include "simplicial/signed_graph.hpp"
#include "simplicial/walks.hpp"

namespace simplicial {

using nlohmann::json;

namespace {

constexpr double kIdentityTolerance = 1e-12;
constexpr double kIntertwiningTolerance = 1e-10;
constexpr double kSpectralSlack = 1e-10;
constexpr double kLimitTolerance = 1e-8;
constexpr double kRateTolerance = 1e-6;
constexpr double kAdjointTolerance = 1e-10;
constexpr std::size_t kIntertwiningSteps = 10;

json vec(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json names(const Labels& labels) {
  json out = json::array();
  for (const auto& l : labels) out.push_back(l.str());
  return out;
}

json named_values(const Labels& labels, const Eigen::VectorXd& v) {
  return {{"labels", names(labels)}, {"values", vec(v)}};
}

json simplices(const std::vector<OrientedSimplex>& s) {
  json out = json::array();
  for (const auto& o : s) out.push_back(o.str());
  return out;
}

json check(double residual, double tolerance) {
  return {{"residual", residual}, {"tolerance", tolerance}, {"pass", residual <= tolerance}};
}

WeightFunction make_weights(const SimplicialComplex& complex, const std::string& kind, int d) {
  if (kind == "one") return WeightFunction::constant_one(complex);
  if (kind == "normalized") return WeightFunction::normalized(complex);
  if (kind == "recip-deg") return WeightFunction::reciprocal_degree(complex, d);
  throw PreconditionError("unknown weights '" + kind + "' (expected one, normalized or recip-deg)");
}

json summarize(const SimplicialComplex& complex, const std::filesystem::path& path) {
  json counts = json::array();
  for (int d = 0; d <= complex.top_dim(); ++d) counts.push_back(complex.count(d));
  json out = {{"path", path.filename().string()},
              {"dimension", complex.top_dim()},
              {"counts", counts},
              {"facets", complex.facets().size()},
              {"pure", complex.is_pure()}};
  if (complex.top_dim() >= 1) {
    const int n = complex.top_dim();
    out["vertex_components"] = complex.connected_components(0, Direction::up).size();
    out["top_down_components"] = complex.connected_components(n, Direction::down).size();
    json free = json::array();
    for (const auto& f : free_faces(complex)) free.push_back(f.str());
    out["free_faces"] = free;
  }
  return out;
}

json betti_section(const SimplicialComplex& complex, const std::string& weights) {
  json values = json::array();
  for (int d = 0; d <= complex.top_dim(); ++d) values.push_back(betti(complex, d, make_weights(complex, weights, d)));
  return {{"values", values},
          {"weights", weights},
          {"method", "exact integer rank, cross-checked against the Laplacian kernel"},
          {"kernel_tolerance", linalg::kKernelTolerance}};
}

json spectrum_entry(const OperatorMatrix& op, const Eigen::VectorXd& w, int d, const std::string& kind,
                    const std::string& weights) {
  const SpectralDecomposition s = spectrum(op, w);
  return {{"dim", d},
          {"kind", kind},
          {"weights", weights},
          {"eigenvalues", vec(s.eigenvalues)},
          {"kernel_dim", s.kernel_dim},
          {"kernel_tolerance", s.kernel_tolerance}};
}

json spectra_section(const SimplicialComplex& complex, const Request& req) {
  json out = json::array();
  std::vector<int> dims;
  if (req.dim) dims.push_back(*req.dim);
  else
    for (int d = 0; d <= complex.top_dim(); ++d) dims.push_back(d);
  for (int d : dims) {
    if (d < 0 || d > complex.top_dim()) throw PreconditionError("--dim out of range: " + std::to_string(d));
    const WeightFunction w = make_weights(complex, req.weights, d);
    const Eigen::VectorXd wd = weight_vector(w, d);
    if (d < complex.top_dim()) out.push_back(spectrum_entry(up_laplacian(complex, d, w), wd, d, "up", req.weights));
    if (d > 0) out.push_back(spectrum_entry(down_laplacian(complex, d, w), wd, d, "down", req.weights));
    out.push_back(spectrum_entry(full_laplacian(complex, d, w), wd, d, "full", req.weights));
  }
  return out;
}

json gaps_section(const SimplicialComplex& complex, const Request& req) {
  const int d = complex.top_dim() - 1;
  const WeightFunction w = make_weights(complex, req.weights, std::max(d, 0));
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  return {{"dim", d},
          {"weights", req.weights},
          {"spectral_gap", opt(spectral_gap(complex, w))},
          {"essential_gap", opt(essential_gap(complex, w))},
          {"betti", betti_exact(complex, std::max(d, 0))},
          {"kernel_tolerance", linalg::kKernelTolerance}};
}

json balance_json(const SignedGraph& g, const BalanceCertificate& c) {
  json out = {{"holds", c.balanced}};
  if (c.balanced) {
    out["switching"] = c.switching.flipped;
  } else {
    std::vector<OrientedSimplex> cycle;
    for (std::size_t v : c.negative_cycle) cycle.push_back(g.vertices()[v]);
    out["certificate"] = simplices(cycle);
  }
  return out;
}

json signed_graph_json(const SignedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.sign});
  json vertices = simplices(g.vertices());
  json out = {{"vertices", vertices},
              {"edges", edges},
              {"balanced", balance_json(g, is_balanced(g))},
              {"antibalanced", balance_json(g.negated(), is_antibalanced(g))}};
  const auto& deg = g.degrees();
  if (std::all_of(deg.begin(), deg.end(), [](std::size_t k) { return k > 0; })) {
    const SpectralDecomposition s = spectrum(signed_laplacian(g), signed_laplacian_weights(g));
    out["laplacian_spectrum"] = {{"eigenvalues", vec(s.eigenvalues)},
                                 {"interval", {0.0, 2.0}},
                                 {"slack", kSpectralSlack},
                                 {"contained", s.eigenvalues.minCoeff() >= -kSpectralSlack &&
                                                   s.eigenvalues.maxCoeff() <= 2.0 + kSpectralSlack}};
  } else {
    out["laplacian_spectrum"] = nullptr;
  }
  return out;
}

json signed_section(const SimplicialComplex& complex, const Request& req, json& warnings) {
  const int n = complex.top_dim();
  const int d = req.dim.value_or(n);
  json out = {{"dim", d}};
  if (d <= n - 1) {
    json up = signed_graph_json(up_signed_graph(complex, d));
    try {
      up["relation"] = check(verify_up_relation(complex, d), kIdentityTolerance);
    } catch (const PreconditionError& e) {
      up["relation"] = nullptr;
      warnings.push_back(std::string("up relation skipped: ") + e.what());
    }
    out["up"] = up;
  } else {
    out["up"] = nullptr;
  }
  if (d >= 1 && d <= n) {
    json down = signed_graph_json(down_signed_graph(complex, d));
    down["relation"] = nullptr;
    if (d == n) {
      try {
        down["relation"] = check(verify_down_relation(complex), kIdentityTolerance);
      } catch (const PreconditionError& e) {
        warnings.push_back(std::string("down relation skipped: ") + e.what());
      }
    }
    out["down"] = down;
  } else {
    out["down"] = nullptr;
  }
  return out;
}

json verdict_json(const SimplicialComplex& complex, const OrientabilityVerdict& v) {
  json out = {{"holds", v.holds}, {"components", v.components}};
  if (v.assignment) {
    json a = json::array();
    const int n = complex.top_dim();
    for (std::size_t i = 0; i < v.assignment->signs.size(); ++i)
      a.push_back(OrientedSimplex(complex.simplex(n, i), v.assignment->signs[i]).str());
    out["assignment"] = a;
    out["verified_pairwise"] = verify_assignment(complex, *v.assignment);
  } else {
    out["assignment"] = nullptr;
    out["certificate"] = simplices(v.certificate);
  }
  return out;
}

OrientedSimplex start_simplex(const SimplicialComplex& complex, int d, const Request& req) {
  if (!req.start) return OrientedSimplex(complex.simplex(d, 0));
  const OrientedSimplex s = parse_oriented_simplex(*req.start);
  if (!complex.contains(s.simplex()) || s.simplex().dim() != d)
    throw PreconditionError("start " + *req.start + " is not a " + std::to_string(d) + "-simplex of the complex");
  return s;
}

std::size_t start_state(const MarkovWalk& walk, const Request& req) {
  return req.start ? walk.space.find(*req.start) : 0;
}

void append(json& warnings, const std::vector<std::string>& items) {
  for (const auto& w : items) warnings.push_back(w);
}

json process_json(const Labels& labels, const ExpectationProcess& p) {
  return {{"scale", p.scale},
          {"final", named_values(labels, p.values.back().values())},
          {"limit", named_values(labels, p.limit.values())},
          {"iteration_converged", p.iteration_converged},
          {"iteration_gap", p.iteration_gap},
          {"tolerance", kLimitTolerance}};
}

json homology_json(const HomologyDetection& h, const char* trivial_name) {
  return {{"span_dim", h.span_dim},
          {"betti", h.betti},
          {"agrees", h.span_dim == h.betti},
          {std::string("all_") + trivial_name, h.all_trivial},
          {"max_residual", h.max_trivial_residual},
          {"rank_tolerance", h.rank_tolerance}};
}

int down_dim(const SimplicialComplex& complex, const Request& req) {
  return req.dim.value_or(std::min(1, complex.top_dim()));
}

json walk_up(const SimplicialComplex& complex, const Request& req, json& warnings) {
  const double p = req.laziness;
  const MarkovWalk walk = up_walk(complex, p);
  const UpTransitionOperator op = up_transition_operator(complex, p);
  const int d = complex.top_dim() - 1;
  const OrientedSimplex start = start_simplex(complex, d, req);
  const ExpectationProcess proc = expectation_process_up(complex, start, p, req.steps);
  append(warnings, proc.warnings);
  const std::size_t state = walk.space.find(start.str());
  const Distribution marg = walk.evolve(Distribution::point_mass(walk.space.size(), state), req.steps);
  return {{"walk", "up"},
          {"dim", d},
          {"laziness", p},
          {"states", walk.space.size()},
          {"start", start.str()},
          {"steps", req.steps},
          {"stochasticity", check(walk.stochasticity_defect(), kIdentityTolerance)},
          {"identity", check(op.residual, kIdentityTolerance)},
          {"top_eigenvalue", op.top_eigenvalue},
          {"marginals", named_values(walk.space.states, marg.probabilities)},
          {"expectation", process_json(canonical_labels(complex, d), proc)},
          {"homology", homology_json(detect_homology_up(complex, p), "exact")}};
}

json walk_down(const SimplicialComplex& complex, const Request& req, json& warnings) {
  const double p = req.laziness;
  const int d = down_dim(complex, req);
  const MarkovWalk walk = down_walk(complex, d, p);
  const DownPropagation prop = down_propagation_matrix(complex, d, p);
  const OrientedSimplex start = start_simplex(complex, d, req);
  const ExpectationProcess proc = expectation_process_down(complex, d, start, p, req.steps);
  append(warnings, proc.warnings);
  const std::size_t state = walk.space.find(start.str());
  const Distribution marg = walk.evolve(Distribution::point_mass(walk.space.size(), state), req.steps);
  return {{"walk", "down"},
          {"dim", d},
          {"laziness", p},
          {"d_max", prop.d_max},
          {"states", walk.space.size()},
          {"start", start.str()},
          {"steps", req.steps},
          {"stochasticity", check(walk.stochasticity_defect(), kIdentityTolerance)},
          {"identity", check(prop.residual, kIdentityTolerance)},
          {"intertwining", check(intertwining_residual(complex, d, p, kIntertwiningSteps), kIntertwiningTolerance)},
          {"intertwining_steps", kIntertwiningSteps},
          {"death_mass", marg.probabilities(marg.probabilities.size() - 1)},
          {"marginals", named_values(walk.space.states, marg.probabilities)},
          {"expectation", process_json(canonical_labels(complex, d), proc)},
          {"homology", homology_json(detect_homology_down(complex, d, p), "coexact")}};
}

struct GraphTarget {
  SimplicialComplex complex;
  std::vector<bool> original_top;
  bool extended = false;
};

GraphTarget graph_target(const SimplicialComplex& complex, json& warnings) {
  if (free_faces(complex).empty())
    return {complex, std::vector<bool>(complex.count(complex.top_dim()), true), false};
  ExtendedComplex ext = extend_closing_boundary(complex);
  warnings.push_back("closed " + std::to_string(ext.cap_vertices.size()) +
                     " free faces with cone simplices before running the graph-type walk");
  return {ext.complex, ext.original_top, true};
}

json restricted(const Eigen::VectorXd& x, const std::vector<bool>& mask, const Labels& labels) {
  Labels kept;
  std::vector<double> values;
  double mass = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) {
      kept.push_back(labels[i]);
      values.push_back(x(static_cast<Eigen::Index>(i)));
      mass += values.back();
    }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  if (mass > 0.0) v /= mass;
  return {{"mass_on_original", mass}, {"normalized", named_values(kept, v)}};
}

json walk_graph(const SimplicialComplex& complex, const Request& req, json& report, json& warnings, int& exit_code) {
  const double p = req.laziness;
  const GraphTarget target = graph_target(complex, warnings);
  const OrientabilityVerdict verdict = is_orientable(target.complex);
  report["orientable"] = verdict_json(target.complex, verdict);
  if (!verdict.holds) {
    exit_code = kExitPrecondition;
    return {{"walk", "graph-type"}, {"error", "complex is not orientable"}, {"certificate", simplices(verdict.certificate)}};
  }
  const GraphTypeWalk gw = graph_type_down_walk(target.complex, p, {target.extended});
  const MarkovWalk& walk = gw.walk;
  append(warnings, walk.warnings);
  const std::size_t state = start_state(walk, req);
  const Distribution mu0 = Distribution::point_mass(walk.space.size(), state);
  const StationaryResult stat = stationary_distribution(walk, mu0);
  append(warnings, stat.warnings);
  const Distribution marg = walk.evolve(mu0, req.steps);
  const auto eig = linalg::weighted_eigensolve(walk.transition.values, walk.reversing_measure);
  const int n = target.complex.top_dim();

  json out = {{"walk", "graph-type"},
              {"dim", n},
              {"laziness", p},
              {"extended", target.extended},
              {"states", walk.space.size()},
              {"start", walk.space.states[state].str()},
              {"steps", req.steps},
              {"stochasticity", check(walk.stochasticity_defect(), kIdentityTolerance)},
              {"identity", gw.identity_residual ? check(*gw.identity_residual, kIdentityTolerance) : json(nullptr)},
              {"spectrum", {{"min", eig.values.minCoeff()},
                            {"max", eig.values.maxCoeff()},
                            {"interval", {2 * p - 1, 1.0}},
                            {"slack", kSpectralSlack},
                            {"contained", eig.values.minCoeff() >= 2 * p - 1 - kSpectralSlack &&
                                              eig.values.maxCoeff() <= 1 + kSpectralSlack}}},
              {"stationary", {{"projection", named_values(walk.space.states, stat.projection.probabilities)},
                              {"iterations", stat.iterations},
                              {"agreement", check(stat.agreement, kLimitTolerance)},
                              {"eigenspace_dim", stat.eigenspace_dim},
                              {"betti_top", betti_exact(target.complex, n)}}},
              {"start_independence", check(start_independence(walk), kLimitTolerance)},
              {"marginals", named_values(walk.space.states, marg.probabilities)}};
  if (target.extended) {
    out["restricted"] = {{"marginals", restricted(marg.probabilities, target.original_top, walk.space.states)},
                         {"stationary", restricted(stat.projection.probabilities, target.original_top,
                                                   walk.space.states)}};
  }
  return out;
}

json trace_json(const ConvergenceTrace& t, const std::string& walk) {
  return {{"walk", walk},
          {"lambda", t.lambda},
          {"bound", t.bound},
          {"fitted_ratio", t.fitted_ratio},
          {"fit_steps", t.fit_steps},
          {"tolerance", t.tolerance},
          {"within_bound", t.within_bound()},
          {"distance", t.distance},
          {"bound_curve", t.bound_curve},
          {"total_variation", t.total_variation}};
}

json converge(const SimplicialComplex& complex, const Request& req, json& warnings) {
  const double p = req.laziness;
  ConvergenceTrace trace;
  json extra = json::object();
  if (req.walk == "up") {
    trace = up_convergence(complex, start_simplex(complex, complex.top_dim() - 1, req), p, req.steps);
  } else if (req.walk == "down") {
    const int d = down_dim(complex, req);
    trace = down_convergence(complex, d, start_simplex(complex, d, req), p, req.steps);
  } else if (req.walk == "graph") {
    const MarkovWalk walk = graph_type_transition(complex, p);
    trace = graph_type_convergence(complex, start_state(walk, req), p, req.steps);
    extra["norm_identity"] = check(graph_type_norm_identity_residual(complex, p, kIntertwiningSteps), kLimitTolerance);
  } else if (req.walk == "vertex") {
    const MarkovWalk walk = graph_walk(complex, p);
    trace = graph_walk_convergence(complex, start_state(walk, req), p, req.steps);
  } else {
    throw PreconditionError("unknown walk '" + req.walk + "' (expected up, down, graph or vertex)");
  }
  append(warnings, trace.warnings);
  json out = trace_json(trace, req.walk);
  out["laziness"] = p;
  out.update(extra);
  return out;
}

json montecarlo(const SimplicialComplex& complex, const Request& req, json& warnings) {
  const double p = req.laziness;
  MarkovWalk walk;
  std::optional<Eigen::MatrixXd> b;
  if (req.walk == "up") {
    walk = up_walk(complex, p);
  } else if (req.walk == "down") {
    const int d = down_dim(complex, req);
    walk = down_walk(complex, d, p);
    b = down_propagation_matrix(complex, d, p).b.values;
  } else if (req.walk == "graph") {
    walk = graph_type_transition(complex, p);
  } else if (req.walk == "vertex") {
    walk = graph_walk(complex, p);
  } else {
    throw PreconditionError("unknown walk '" + req.walk + "' (expected up, down, graph or vertex)");
  }
  append(warnings, walk.warnings);
  const std::size_t state = start_state(walk, req);
  const MonteCarloResult r =
      monte_carlo(walk, state, {req.chains, req.steps, req.seed, req.workers}, b ? &*b : nullptr);
  json out = {{"walk", req.walk},
              {"laziness", p},
              {"start", walk.space.states[state].str()},
              {"steps", r.steps},
              {"chains", r.chains},
              {"seed", req.seed},
              {"empirical", named_values(walk.space.states, r.empirical)},
              {"exact", vec(r.exact)},
              {"marginals", check(r.max_deviation, r.tolerance)},
              {"within_tolerance", r.within_tolerance()}};
  if (r.empirical_difference) {
    out["orientation_difference"] = {{"empirical", vec(*r.empirical_difference)},
                                     {"exact", vec(*r.exact_difference)},
                                     {"deviation", check(r.max_difference_deviation, r.difference_tolerance)}};
  }
  if (r.propagation_gap) out["propagation"] = check(*r.propagation_gap, kIntertwiningTolerance);
  return out;
}

// Runs `f` and records its residual; precondition failures become skipped entries.
void attempt(json& list, json& skipped, const std::string& name, const std::function<json()>& f) {
  try {
    json entry = f();
    entry["name"] = name;
    list.push_back(entry);
  } catch (const PreconditionError& e) {
    skipped.push_back({{"name", name}, {"reason", e.what()}});
  }
}

json verify_identities(const SimplicialComplex& complex, const Request& req, bool& all_pass) {
  const int n = complex.top_dim();
  const double p = req.laziness;
  json list = json::array();
  json skipped = json::array();

  for (int d = 2; d <= n; ++d) {
    const IntegerMatrix bb = boundary_matrix(complex, d - 1).values * boundary_matrix(complex, d).values;
    const IntegerMatrix cc = coboundary_matrix(complex, d - 1).values * coboundary_matrix(complex, d - 2).values;
    json e = check(static_cast<double>(std::max(bb.cwiseAbs().maxCoeff(), cc.cwiseAbs().maxCoeff())), 0.0);
    e["name"] = "boundary_squared";
    e["dim"] = d;
    list.push_back(e);
  }
  for (int d = 0; d < n; ++d) {
    attempt(list, skipped, "adjointness", [&] {
      const WeightFunction w = make_weights(complex, req.weights, d);
      const Eigen::MatrixXd delta = coboundary_matrix(complex, d).values.cast<double>();
      const Eigen::MatrixXd adj = adjoint_coboundary_matrix(complex, d, w).values;
      const Eigen::MatrixXd lhs = weight_vector(w, d + 1).asDiagonal() * delta;
      const Eigen::MatrixXd rhs = (weight_vector(w, d).asDiagonal() * adj).transpose();
      json e = check((lhs - rhs).cwiseAbs().maxCoeff(), kAdjointTolerance);
      e["dim"] = d;
      return e;
    });
    attempt(list, skipped, "up_signed_relation", [&] {
      json e = check(verify_up_relation(complex, d), kIdentityTolerance);
      e["dim"] = d;
      return e;
    });
  }
  if (n >= 1) {
    attempt(list, skipped, "down_signed_relation",
            [&] { return check(verify_down_relation(complex), kIdentityTolerance); });
    attempt(list, skipped, "up_walk_identity",
            [&] { return check(up_transition_operator(complex, p).residual, kIdentityTolerance); });
    for (int d = 1; d <= n; ++d) {
      attempt(list, skipped, "down_walk_identity", [&] {
        json e = check(down_propagation_matrix(complex, d, p).residual, kIdentityTolerance);
        e["dim"] = d;
        return e;
      });
      attempt(list, skipped, "intertwining", [&] {
        json e = check(intertwining_residual(complex, d, p, kIntertwiningSteps), kIntertwiningTolerance);
        e["dim"] = d;
        e["steps"] = kIntertwiningSteps;
        return e;
      });
    }
    attempt(list, skipped, "graph_type_identity", [&]() -> json {
      const GraphTypeWalk gw = graph_type_down_walk(complex, p);
      if (!gw.identity_residual) throw PreconditionError("some (N-1)-face does not have degree 2");
      return check(*gw.identity_residual, kIdentityTolerance);
    });
    attempt(list, skipped, "graph_walk_identity",
            [&] { return check(graph_walk_identity_residual(complex, p), kIdentityTolerance); });
  }
  all_pass = std::all_of(list.begin(), list.end(), [](const json& e) { return e["pass"].get<bool>(); });
  return {{"laziness", p}, {"checks", list}, {"skipped", skipped}, {"all_pass", all_pass}};
}

json empty_report(const std::string& command) {
  return {{"command", command}, {"complex", nullptr}, {"betti", nullptr}, {"spectra", nullptr},
          {"signed", nullptr},  {"orientable", nullptr}, {"walks", nullptr}, {"warnings", json::array()}};
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands = {
      "summary",   "betti",   "spectrum",  "gaps",     "signed",     "orientable",       "disorientable",
      "walk-up", "walk-down", "walk-graph", "converge", "montecarlo", "verify-identities"};
  return commands;
}

Outcome run(const Request& req) {
  Outcome out;
  out.report = empty_report(req.command);
  json& report = out.report;
  json warnings = json::array();
  try {
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), req.command) == cmds.end())
      throw PreconditionError("unknown command '" + req.command + "'");
    if (!(req.laziness >= 0.0 && req.laziness <= 1.0))
      throw PreconditionError("laziness must lie in [0, 1]");

    const SimplicialComplex complex = load_complex(req.complex_path);
    report["complex"] = summarize(complex, req.complex_path);
    const std::string& c = req.command;

    if (c == "betti" || c == "summary") {
      report["betti"] = betti_section(complex, req.weights);
    } else if (c == "spectrum") {
      report["spectra"] = spectra_section(complex, req);
    } else if (c == "gaps") {
      report["spectra"] = {{"gaps", gaps_section(complex, req)}};
    } else if (c == "signed") {
      report["signed"] = signed_section(complex, req, warnings);
    } else if (c == "orientable") {
      report["orientable"] = verdict_json(complex, is_orientable(complex));
    } else if (c == "disorientable") {
      report["orientable"] = {{"disorientable", verdict_json(complex, is_disorientable(complex))}};
    } else if (c == "walk-up") {
      report["walks"] = walk_up(complex, req, warnings);
    } else if (c == "walk-down") {
      report["walks"] = walk_down(complex, req, warnings);
    } else if (c == "walk-graph") {
      report["walks"] = walk_graph(complex, req, report, warnings, out.exit_code);
      if (out.exit_code != kExitOk) out.diagnostic = "walk-graph: complex is not orientable";
    } else if (c == "converge") {
      report["walks"] = {{"converge", converge(complex, req, warnings)}};
    } else if (c == "montecarlo") {
      report["walks"] = {{"montecarlo", montecarlo(complex, req, warnings)}};
    } else if (c == "verify-identities") {
      bool all_pass = true;
      report["walks"] = {{"identities", verify_identities(complex, req, all_pass)}};
      if (!all_pass) {
        out.exit_code = kExitVerification;
        out.diagnostic = "verify-identities: some identity exceeded its tolerance";
      }
    }
  } catch (const PreconditionError& e) {
    out.exit_code = kExitPrecondition;
    out.diagnostic = e.what();
    report["error"] = e.what();
  } catch (const InternalError& e) {
    out.exit_code = kExitInternal;
    out.diagnostic = std::string("internal consistency check failed: ") + e.what();
    report["error"] = out.diagnostic;
  }
  report["warnings"] = warnings;
  return out;
}

namespace {

void render_text(std::ostringstream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(os, v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  os << prefix << ": " << j.dump() << '\n';
}

std::string csv_field(const json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void render_csv(std::ostringstream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_csv(os, v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_csv(os, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  os << csv_field(prefix) << ',' << csv_field(j) << '\n';
}

}  // namespace

std::string render(const Outcome& outcome, const Request& request) {
  std::ostringstream os;
  switch (request.format) {
    case OutputFormat::json:
      os << outcome.report.dump(2) << '\n';
      break;
    case OutputFormat::text:
      render_text(os, outcome.report, "");
      break;
    case OutputFormat::csv: {
      const json& walks = outcome.report["walks"];
      if (request.command == "converge" && walks.is_object() && walks.contains("converge")) {
        const json& c = walks["converge"];
        os << "t,distance,bound\n";
        os.precision(17);
        for (std::size_t t = 0; t < c["distance"].size(); ++t)
          os << t << ',' << c["distance"][t].get<double>() << ',' << c["bound_curve"][t].get<double>() << '\n';
      } else {
        os << "key,value\n";
        render_csv(os, outcome.report, "");
      }
      break;
    }
  }
  return os.str();
}

}  // namespace simplicial
