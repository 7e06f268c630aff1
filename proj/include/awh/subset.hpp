#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "awh/curve.hpp"
#include "awh/models.hpp"
#include "awh/rng.hpp"

namespace awh {

struct SubsetConfig {
  std::size_t population = 10000;
  double p0 = 0.1;
  /// Conditional MCMC steps grown from each seed at every level.
  std::size_t chain_steps = 10;
  std::size_t max_levels = 30;
  /// Overrides the normal model's proposal step s when set.
  std::optional<double> proposal_step;

  void validate() const;
  /// p0 * population.
  std::size_t seeds() const;

  bool operator==(const SubsetConfig&) const = default;
};

struct SubsetResult {
  double p_failure = 0.0;
  /// Adaptive intermediate thresholds, in the order they were reached.
  std::vector<double> levels;
  /// (lambda, pi(G <= lambda)) at level boundaries, ascending in lambda,
  /// ending with (+inf, 1).
  std::vector<CurvePoint> curve;
  std::uint64_t evals = 0;
  bool converged = false;
  std::size_t completed_levels = 0;
  double final_fraction = 0.0;
};

/// The ceil(p0 * n)-th smallest g, or 0 when that value is <= 0.
double next_level(std::span<const double> g_values, double p0);

/// Subset simulation: prior population, then repeated quantile levels with
/// seeds grown by conditional MCMC until the quantile reaches 0.
///
/// When max_levels is exhausted first the result is flagged not converged and
/// p_failure is p0^L, the probability of the last level reached, which bounds
/// the failure probability from above.
SubsetResult run_subset(const LimitStateModel& model, const SubsetConfig& config, Rng& rng);

}  // namespace awh
