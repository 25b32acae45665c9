#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "simplicial/walks.hpp"

namespace simplicial {

struct MonteCarloConfig {
  std::size_t chains = 1000;
  std::size_t steps = 50;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // chains are split across threads; results do not depend on this
};

/**
 * \brief Empirical marginals at time `steps` against the exact matrix power.
 *
 * For oriented walks the orientation difference f(+s) - f(-s) is compared both
 * with T applied to the exact marginal and, for the down walk, with the B
 * iteration. Tolerances are 4 binomial standard errors.
 */
struct MonteCarloResult {
  Eigen::VectorXd empirical;
  Eigen::VectorXd exact;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  std::optional<Eigen::VectorXd> empirical_difference;
  std::optional<Eigen::VectorXd> exact_difference;
  double max_difference_deviation = 0.0;
  double difference_tolerance = 0.0;
  /// |T P^T mu - B^T T mu|, down walk only.
  std::optional<double> propagation_gap;

  std::size_t chains = 0;
  std::size_t steps = 0;

  bool within_tolerance() const {
    return max_deviation <= tolerance && max_difference_deviation <= difference_tolerance;
  }
};

/// Counts of the final states of `config.chains` independent trajectories.
Eigen::VectorXi sample_final_states(const MarkovWalk& walk, std::size_t start, const MonteCarloConfig& config);

/// `propagation` (optional) is the down-walk B matrix on canonical simplices.
MonteCarloResult monte_carlo(const MarkovWalk& walk, std::size_t start, const MonteCarloConfig& config,
                             const Eigen::MatrixXd* propagation = nullptr);

}  // namespace simplicial
