#include "awh/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "awh/errors.hpp"

namespace awh {

namespace {

void check_dimension(std::span<const double> x, std::size_t expected, const char* model) {
  if (x.size() != expected) {
    throw ConfigError(std::string(model) + ": state has " + std::to_string(x.size()) +
                      " coordinates, model expects " + std::to_string(expected));
  }
}

void check_level(double g, double lambda) {
  if (!(g <= lambda)) {
    throw InvariantError("mcmc_step: current state violates its level (G = " +
                         std::to_string(g) + " > lambda = " + std::to_string(lambda) + ")");
  }
}

}  // namespace

NormalLinearModel::NormalLinearModel(std::size_t n, double beta, double step)
    : n_(n), beta_(beta), step_(step) {
  if (n == 0) throw ConfigError("normal model: n must be >= 1");
  if (!(step > 0.0 && step <= 1.0)) throw ConfigError("normal model: step s must lie in (0, 1]");
  if (!std::isfinite(beta)) throw ConfigError("normal model: beta must be finite");
  contraction_ = std::sqrt(1.0 - step * step);
  inv_sqrt_n_ = 1.0 / std::sqrt(static_cast<double>(n));
}

StateVector NormalLinearModel::sample_prior(Rng& rng) const {
  StateVector x(n_);
  for (auto& v : x) v = rng.normal();
  return x;
}

double NormalLinearModel::limit_state(std::span<const double> x) const {
  check_dimension(x, n_, "normal model");
  return beta_ - inv_sqrt_n_ * std::accumulate(x.begin(), x.end(), 0.0);
}

McmcOutcome NormalLinearModel::mcmc_step(const StateVector& x, double g, double lambda,
                                         Rng& rng) const {
  check_level(g, lambda);
  StateVector proposal(n_);
  for (std::size_t i = 0; i < n_; ++i) proposal[i] = contraction_ * x[i] + step_ * rng.normal();
  const double g_new = limit_state(proposal);
  if (g_new <= lambda) return {std::move(proposal), true, g_new, 1};
  return {x, false, g, 1};
}

FiberBundleModel::FiberBundleModel(std::size_t n_fibers, double kappa, double load)
    : n_(n_fibers), kappa_(kappa), load_(load) {
  if (n_fibers == 0) throw ConfigError("fbm: n_fibers must be >= 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("fbm: kappa must be > 0");
  if (!(load >= 0.0) || !std::isfinite(load)) throw ConfigError("fbm: load must be >= 0");
}

double FiberBundleModel::force(std::span<const double> x, double extension) const {
  const auto surviving = std::count_if(x.begin(), x.end(),
                                       [extension](double xi) { return xi - extension >= 0.0; });
  return kappa_ * extension * static_cast<double>(surviving);
}

double FiberBundleModel::mean_force(double extension) const {
  const double cdf = std::clamp(extension, 0.0, 1.0);
  return static_cast<double>(n_) * kappa_ * extension * (1.0 - cdf);
}

double FiberBundleModel::force_variance(double extension) const {
  const double cdf = std::clamp(extension, 0.0, 1.0);
  return static_cast<double>(n_) * kappa_ * kappa_ * extension * extension * cdf * (1.0 - cdf);
}

StateVector FiberBundleModel::sample_prior(Rng& rng) const {
  StateVector x(n_);
  for (auto& v : x) v = rng.uniform();
  return x;
}

double FiberBundleModel::limit_state(std::span<const double> x) const {
  check_dimension(x, n_, "fbm");
  // Descending sort by bucketing on [0, 1) followed by insertion sort inside
  // each bucket; thresholds outside [0, 1) land in the end buckets.
  thread_local std::vector<std::size_t> start;
  thread_local std::vector<double> sorted;
  const std::size_t buckets = n_;
  const auto bucket_of = [buckets](double v) {
    const double scaled = v * static_cast<double>(buckets);
    if (!(scaled > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(scaled), buckets - 1);
  };
  start.assign(buckets + 1, 0);
  for (double v : x) ++start[buckets - 1 - bucket_of(v) + 1];
  for (std::size_t b = 1; b <= buckets; ++b) start[b] += start[b - 1];
  sorted.resize(n_);
  for (double v : x) sorted[start[buckets - 1 - bucket_of(v)]++] = v;
  // start[b] now marks the end of bucket b; restore the beginnings by shifting.
  for (std::size_t b = buckets; b > 0; --b) start[b] = start[b - 1];
  start[0] = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    for (std::size_t i = start[b] + 1; i < start[b + 1]; ++i) {
      const double v = sorted[i];
      std::size_t k = i;
      for (; k > start[b] && sorted[k - 1] < v; --k) sorted[k] = sorted[k - 1];
      sorted[k] = v;
    }
  }
  // With ties, the last member of a tie group carries the full surviving
  // count, so scanning every rank j covers the theta(0) = 1 convention.
  double peak = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    peak = std::max(peak, static_cast<double>(j + 1) * sorted[j]);
  }
  return kappa_ * peak - load_;
}

McmcOutcome FiberBundleModel::mcmc_step(const StateVector& x, double g, double lambda,
                                        Rng& rng) const {
  check_level(g, lambda);
  StateVector proposal = x;
  proposal[rng.index(n_)] = rng.uniform();
  const double g_new = limit_state(proposal);
  if (g_new <= lambda) return {std::move(proposal), true, g_new, 1};
  return {x, false, g, 1};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double exact_normal_curve(double beta, double lambda) { return normal_cdf(lambda - beta); }

}  // namespace awh
