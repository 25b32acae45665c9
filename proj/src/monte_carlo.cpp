#include "simplicial/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "simplicial/errors.hpp"

namespace simplicial {

namespace {

// Cumulative row tables over the non-zero entries.
struct RowSampler {
  std::vector<std::vector<double>> cumulative;
  std::vector<std::vector<Eigen::Index>> targets;

  explicit RowSampler(const Eigen::MatrixXd& p) : cumulative(p.rows()), targets(p.rows()) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < p.cols(); ++j) {
        if (p(i, j) <= 0.0) continue;
        acc += p(i, j);
        cumulative[i].push_back(acc);
        targets[i].push_back(j);
      }
      if (targets[i].empty()) throw PreconditionError("transition row with no mass");
    }
  }

  Eigen::Index step(Eigen::Index from, double u) const {
    const auto& c = cumulative[from];
    const double x = u * c.back();
    auto it = std::upper_bound(c.begin(), c.end(), x);
    if (it == c.end()) --it;
    return targets[from][static_cast<std::size_t>(it - c.begin())];
  }
};

std::mt19937_64 chain_engine(std::uint64_t seed, std::uint64_t chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain), static_cast<std::uint32_t>(chain >> 32)};
  return std::mt19937_64(seq);
}

void run_chains(const RowSampler& sampler, Eigen::Index start, const MonteCarloConfig& config, std::size_t begin,
                std::size_t end, Eigen::VectorXi& counts) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t c = begin; c < end; ++c) {
    auto engine = chain_engine(config.seed, c);
    Eigen::Index state = start;
    for (std::size_t t = 0; t < config.steps; ++t) state = sampler.step(state, unif(engine));
    ++counts(state);
  }
}

}  // namespace

Eigen::VectorXi sample_final_states(const MarkovWalk& walk, std::size_t start, const MonteCarloConfig& config) {
  if (config.chains < 1) throw PreconditionError("Monte Carlo needs at least one chain");
  const auto n = walk.transition.values.rows();
  if (start >= static_cast<std::size_t>(n)) throw PreconditionError("start state out of range");
  const RowSampler sampler(walk.transition.values);

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(config.chains)));
  std::vector<Eigen::VectorXi> partial(workers, Eigen::VectorXi::Zero(n));
  const std::size_t per = (config.chains + workers - 1) / workers;
  if (workers == 1) {
    run_chains(sampler, static_cast<Eigen::Index>(start), config, 0, config.chains, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(config.chains, w * per);
      const std::size_t end = std::min(config.chains, begin + per);
      pool.emplace_back(run_chains, std::cref(sampler), static_cast<Eigen::Index>(start), std::cref(config), begin,
                        end, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }
  Eigen::VectorXi total = Eigen::VectorXi::Zero(n);
  for (const auto& p : partial) total += p;
  return total;
}

MonteCarloResult monte_carlo(const MarkovWalk& walk, std::size_t start, const MonteCarloConfig& config,
                             const Eigen::MatrixXd* propagation) {
  const Eigen::VectorXi counts = sample_final_states(walk, start, config);
  const auto n = walk.transition.values.rows();
  const double chains = static_cast<double>(config.chains);

  MonteCarloResult out;
  out.chains = config.chains;
  out.steps = config.steps;
  out.empirical = counts.cast<double>() / chains;
  out.exact = walk.evolve(Distribution::point_mass(static_cast<std::size_t>(n), start), config.steps).probabilities;
  out.max_deviation = (out.empirical - out.exact).cwiseAbs().maxCoeff();
  out.tolerance = 4.0 * std::sqrt(0.25 / chains);

  const bool oriented =
      walk.space.kind == StateKind::oriented || walk.space.kind == StateKind::oriented_with_death;
  if (oriented) {
    const auto m = static_cast<Eigen::Index>(walk.space.simplex_count());
    const Eigen::VectorXd emp = out.empirical.head(m) - out.empirical.segment(m, m);
    const Eigen::VectorXd ex = out.exact.head(m) - out.exact.segment(m, m);
    out.empirical_difference = emp;
    out.exact_difference = ex;
    out.max_difference_deviation = (emp - ex).cwiseAbs().maxCoeff();
    out.difference_tolerance = 4.0 * std::sqrt(1.0 / chains);
    if (propagation) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
      const auto s = static_cast<Eigen::Index>(start);
      if (s < m) x(s) = 1.0;
      else if (s < 2 * m) x(s - m) = -1.0;
      for (std::size_t t = 0; t < config.steps; ++t) x = (*propagation) * x;
      out.propagation_gap = (x - ex).cwiseAbs().maxCoeff();
    }
  }
  return out;
}

}  // namespace simplicial
