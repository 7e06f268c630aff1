#include "awh/subset.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "awh/errors.hpp"
#include "awh/ladder.hpp"

namespace awh {

namespace {

// ceil(p * n), tolerant of representation error in p (0.3 * 10 is not 3).
std::size_t quantile_count(double p, std::size_t n) {
  const double exact = p * static_cast<double>(n);
  const double nearest = std::round(exact);
  const double rounded = std::abs(exact - nearest) < 1e-9 * std::max(1.0, exact) ? nearest
                                                                                  : std::ceil(exact);
  return std::clamp<std::size_t>(static_cast<std::size_t>(rounded), 1, n);
}

std::vector<std::size_t> order_by_g(std::span<const double> g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&g](std::size_t a, std::size_t b) { return g[a] < g[b]; });
  return order;
}

}  // namespace

void SubsetConfig::validate() const {
  if (population < 1) throw ConfigError("subset: population must be >= 1");
  if (!(p0 > 0.0 && p0 <= 1.0)) throw ConfigError("subset: p0 must lie in (0, 1]");
  const double seeds_exact = p0 * static_cast<double>(population);
  if (std::abs(seeds_exact - std::round(seeds_exact)) > 1e-9 * std::max(1.0, seeds_exact) ||
      std::round(seeds_exact) < 1.0) {
    throw ConfigError("subset: p0 * population must be a positive integer");
  }
  if (chain_steps < 1) throw ConfigError("subset: chain_steps must be >= 1");
  const std::size_t per_seed = (population + seeds() - 1) / seeds();
  if (chain_steps < per_seed) {
    throw ConfigError("subset: chain_steps must be >= population / seeds = " +
                      std::to_string(per_seed) + " to refill the population");
  }
  if (proposal_step && !(*proposal_step > 0.0 && *proposal_step <= 1.0)) {
    throw ConfigError("subset: proposal_step must lie in (0, 1]");
  }
}

std::size_t SubsetConfig::seeds() const { return quantile_count(p0, population); }

double next_level(std::span<const double> g_values, double p0) {
  if (g_values.empty()) throw ConfigError("next_level: empty sample");
  std::vector<double> sorted(g_values.begin(), g_values.end());
  const std::size_t k = quantile_count(p0, sorted.size());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   sorted.end());
  const double level = sorted[k - 1];
  return level <= 0.0 ? 0.0 : level;
}

SubsetResult run_subset(const LimitStateModel& base_model, const SubsetConfig& config, Rng& rng) {
  config.validate();

  std::unique_ptr<NormalLinearModel> restepped;
  const LimitStateModel* model_ptr = &base_model;
  if (config.proposal_step) {
    if (const auto* normal = dynamic_cast<const NormalLinearModel*>(&base_model)) {
      restepped = std::make_unique<NormalLinearModel>(normal->with_step(*config.proposal_step));
      model_ptr = restepped.get();
    }
  }
  const LimitStateModel& model = *model_ptr;

  const std::size_t population = config.population;
  const std::size_t seeds = config.seeds();
  const std::size_t steps = config.chain_steps;

  std::vector<StateVector> states(population);
  std::vector<double> g(population);
  for (std::size_t i = 0; i < population; ++i) {
    states[i] = model.sample_prior(rng);
    g[i] = model.limit_state(states[i]);
  }

  SubsetResult result;
  result.evals = population;
  double log_level_prob = 0.0;
  const double log_p0 = std::log(config.p0);

  const auto failure_fraction = [&g, population] {
    const auto failed = std::count_if(g.begin(), g.end(), [](double v) { return v <= 0.0; });
    return static_cast<double>(failed) / static_cast<double>(population);
  };

  while (true) {
    const double level = next_level(g, config.p0);
    if (level <= 0.0 || config.p0 == 1.0) {
      result.final_fraction = failure_fraction();
      result.p_failure = std::exp(log_level_prob) * result.final_fraction;
      result.converged = true;
      break;
    }
    if (result.completed_levels == config.max_levels) {
      result.final_fraction = failure_fraction();
      result.p_failure = std::exp(log_level_prob);
      result.converged = false;
      break;
    }

    const auto order = order_by_g(g);
    const std::uint64_t level_key = rng.next_u64();
    std::vector<StateVector> next_states(population);
    std::vector<double> next_g(population);

    // Seed i refills `share` slots starting at `offset`, taking chain states
    // at evenly strided steps.
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(seeds); ++si) {
      const auto i = static_cast<std::size_t>(si);
      const std::size_t share = population / seeds + (i < population % seeds ? 1 : 0);
      const std::size_t offset = i * (population / seeds) + std::min(i, population % seeds);
      Rng chain_rng(derive_seed(level_key, i));
      StateVector x = states[order[i]];
      double gx = g[order[i]];
      std::size_t filled = 0;
      for (std::size_t step = 1; step <= steps; ++step) {
        auto outcome = model.mcmc_step(x, gx, level, chain_rng);
        x = std::move(outcome.state);
        gx = outcome.g_value;
        if (filled < share && step == ((filled + 1) * steps) / share) {
          next_states[offset + filled] = x;
          next_g[offset + filled] = gx;
          ++filled;
        }
      }
    }

    result.evals += static_cast<std::uint64_t>(seeds) * steps;
    ++result.completed_levels;
    result.levels.push_back(level);
    log_level_prob += log_p0;
    states = std::move(next_states);
    g = std::move(next_g);

    for (double v : g) {
      if (!(v <= level)) throw InvariantError("subset: sample escaped its level");
    }
  }

  const std::uint64_t expected =
      population + static_cast<std::uint64_t>(result.completed_levels) * seeds * steps;
  if (result.evals != expected) throw InvariantError("subset: evaluation count mismatch");

  if (result.converged && config.p0 < 1.0) {
    result.curve.push_back(CurvePoint::from_log(0.0, std::log(result.p_failure)));
  }
  for (std::size_t j = result.levels.size(); j-- > 0;) {
    result.curve.push_back(
        CurvePoint::from_log(result.levels[j], static_cast<double>(j + 1) * log_p0));
  }
  result.curve.push_back(CurvePoint::from_log(LevelLadder::kInfinity, 0.0));
  return result;
}

}  // namespace awh
