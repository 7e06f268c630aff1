#include "awh/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>

#include "awh/errors.hpp"

namespace awh {

namespace {

std::uint64_t count_chunk(const LimitStateModel& model, std::uint64_t base, std::uint64_t chunk,
                          std::uint64_t samples) {
  Rng rng(derive_seed(base, chunk));
  const std::uint64_t begin = chunk * kCrudeChunk;
  const std::uint64_t end = std::min(samples, begin + kCrudeChunk);
  std::uint64_t failures = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    if (model.limit_state(model.sample_prior(rng)) <= 0.0) ++failures;
  }
  return failures;
}

CrudeEstimate make_estimate(std::uint64_t failures, std::uint64_t samples) {
  CrudeEstimate e;
  e.samples = samples;
  e.failures = failures;
  e.p = static_cast<double>(failures) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(samples));
  return e;
}

void check_samples(std::uint64_t samples) {
  if (samples < 1) throw ConfigError("crude_mc: n_samples must be >= 1");
}

}  // namespace

CrudeEstimate crude_mc(const LimitStateModel& model, std::uint64_t samples, Rng& rng) {
  check_samples(samples);
  const std::uint64_t base = rng.next_u64();
  const auto chunks = static_cast<std::int64_t>((samples + kCrudeChunk - 1) / kCrudeChunk);
  std::uint64_t failures = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
  for (std::int64_t c = 0; c < chunks; ++c) {
    failures += count_chunk(model, base, static_cast<std::uint64_t>(c), samples);
  }
  return make_estimate(failures, samples);
}

CrudeEstimate crude_mc_serial(const LimitStateModel& model, std::uint64_t samples, Rng& rng) {
  check_samples(samples);
  const std::uint64_t base = rng.next_u64();
  const std::uint64_t chunks = (samples + kCrudeChunk - 1) / kCrudeChunk;
  std::uint64_t failures = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) failures += count_chunk(model, base, c, samples);
  return make_estimate(failures, samples);
}

double direct_fbm_limit_state(std::span<const double> x, double kappa, double load) {
  double peak = 0.0;
  for (double xj : x) {
    double surviving = 0.0;
    for (double xi : x) surviving += (xi - xj >= 0.0) ? 1.0 : 0.0;
    peak = std::max(peak, kappa * xj * surviving);
  }
  return peak - load;
}

double fbm_oracle(std::size_t n_fibers, double kappa, double load) {
  if (n_fibers < 1 || n_fibers > 4) throw ConfigError("fbm_oracle: n_fibers must be 1..4");
  if (!(kappa > 0.0) || !(load >= 0.0)) throw ConfigError("fbm_oracle: need kappa > 0, load >= 0");

  std::vector<double> edges{0.0, 1.0};
  for (std::size_t c = 1; c <= n_fibers; ++c) {
    const double b = load / (kappa * static_cast<double>(c));
    if (b > 0.0 && b < 1.0) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const auto integrate = [&](unsigned refinement) {
    const std::size_t split = std::size_t{1} << refinement;
    std::vector<double> mid;
    std::vector<double> width;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double h = (edges[e + 1] - edges[e]) / static_cast<double>(split);
      for (std::size_t s = 0; s < split; ++s) {
        mid.push_back(edges[e] + (static_cast<double>(s) + 0.5) * h);
        width.push_back(h);
      }
    }
    const std::size_t per_dim = mid.size();
    std::size_t total = 1;
    for (std::size_t d = 0; d < n_fibers; ++d) total *= per_dim;

    std::vector<double> x(n_fibers);
    double sum = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      double volume = 1.0;
      for (std::size_t d = 0; d < n_fibers; ++d) {
        const std::size_t i = rest % per_dim;
        rest /= per_dim;
        x[d] = mid[i];
        volume *= width[i];
      }
      if (direct_fbm_limit_state(x, kappa, load) <= 0.0) sum += volume;
    }
    return sum;
  };

  // Cap the finest grid at roughly 10^7 cells.
  unsigned max_refinement = 0;
  while (std::pow(static_cast<double>((edges.size() - 1) << (max_refinement + 1)),
                  static_cast<double>(n_fibers)) <= 1e7) {
    ++max_refinement;
  }
  max_refinement = std::max(max_refinement, 1u);

  double previous = integrate(0);
  for (unsigned r = 1; r <= max_refinement; ++r) {
    const double current = integrate(r);
    const double scale = std::max(std::abs(previous), std::abs(current));
    if (scale == 0.0 || std::abs(current - previous) <= 1e-4 * scale) return current;
    previous = current;
    if (r == max_refinement) {
      std::ostringstream msg;
      msg << "fbm_oracle: no convergence, last two grids gave " << previous << " and " << current;
      throw std::runtime_error(msg.str());
    }
  }
  return previous;
}

ReplicateError::ReplicateError(std::size_t index, std::uint64_t seed, const std::string& what)
    : std::runtime_error("replicate " + std::to_string(index) + " (seed " + std::to_string(seed) +
                         ") failed: " + what),
      index_(index),
      seed_(seed) {}

double rms_relative_error(std::span<const double> estimates, double reference) {
  if (estimates.empty()) throw ConfigError("rms_relative_error: no estimates");
  if (reference == 0.0) throw ConfigError("rms_relative_error: reference must be nonzero");
  double sum = 0.0;
  for (double e : estimates) {
    const double rel = (e - reference) / reference;
    sum += rel * rel;
  }
  return std::sqrt(sum / static_cast<double>(estimates.size()));
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

ReplicateOutcome run_replicate(const ReplicationStudy& study, std::size_t index) {
  Rng rng(replicate_seed(study.master_seed, index));
  const LimitStateModel& model = *study.model;
  return std::visit(
      [&](const auto& config) -> ReplicateOutcome {
        using T = std::decay_t<decltype(config)>;
        if constexpr (std::is_same_v<T, AwhConfig>) {
          const RunResult r = run_awh(model, config, rng);
          return {r.p_failure, r.evals};
        } else if constexpr (std::is_same_v<T, SubsetConfig>) {
          const SubsetResult r = run_subset(model, config, rng);
          return {r.p_failure, r.evals};
        } else {
          const CrudeEstimate r = crude_mc(model, config.samples, rng);
          return {r.p, r.samples};
        }
      },
      study.method);
}

namespace {

void check_study(const ReplicationStudy& study) {
  if (!study.model) throw ConfigError("replication: no model");
  if (study.replicates < 1) throw ConfigError("replication: replicates must be >= 1");
  if (!(study.reference_value > 0.0)) throw ConfigError("replication: reference must be > 0");
}

ErrorReport summarize(const ReplicationStudy& study, std::vector<ReplicateOutcome> outcomes) {
  ErrorReport report;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    report.estimates.push_back(outcomes[i].p_failure);
    report.evals.push_back(outcomes[i].evals);
    report.seeds.push_back(replicate_seed(study.master_seed, i));
  }
  report.rms_relative_error = rms_relative_error(report.estimates, study.reference_value);
  report.mean = std::accumulate(report.estimates.begin(), report.estimates.end(), 0.0) /
                static_cast<double>(report.estimates.size());
  const double total_evals =
      std::accumulate(report.evals.begin(), report.evals.end(), 0.0,
                      [](double acc, std::uint64_t e) { return acc + static_cast<double>(e); });
  report.evals_per_replicate =
      static_cast<std::uint64_t>(std::llround(total_evals / static_cast<double>(outcomes.size())));
  return report;
}

}  // namespace

ErrorReport run_replication(const ReplicationStudy& study) {
  check_study(study);
  const auto n = static_cast<std::ptrdiff_t>(study.replicates);
  std::vector<ReplicateOutcome> outcomes(study.replicates);
  std::vector<std::exception_ptr> errors(study.replicates);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      outcomes[idx] = run_replicate(study, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw ReplicateError(i, replicate_seed(study.master_seed, i), e.what());
    }
  }
  return summarize(study, std::move(outcomes));
}

ErrorReport run_replication_serial(const ReplicationStudy& study) {
  check_study(study);
  std::vector<ReplicateOutcome> outcomes(study.replicates);
  for (std::size_t i = 0; i < study.replicates; ++i) {
    try {
      outcomes[i] = run_replicate(study, i);
    } catch (const std::exception& e) {
      throw ReplicateError(i, replicate_seed(study.master_seed, i), e.what());
    }
  }
  return summarize(study, std::move(outcomes));
}

}  // namespace awh
