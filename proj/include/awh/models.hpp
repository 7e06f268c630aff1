#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "awh/rng.hpp"

namespace awh {

using StateVector = std::vector<double>;

/// Result of one conditional MCMC step. On rejection `state` is the input state.
struct McmcOutcome {
  StateVector state;
  bool accepted = false;
  double g_value = 0.0;
  std::uint64_t evaluations = 0;
};

/// A prior pi(x) together with a limit state G(x); failure is G(x) <= 0.
///
/// Implementations are immutable after construction and may be shared across
/// threads. All randomness comes from the caller's generator.
class LimitStateModel {
 public:
  virtual ~LimitStateModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;

  virtual StateVector sample_prior(Rng& rng) const = 0;
  virtual double limit_state(std::span<const double> x) const = 0;

  /// One step of a kernel that leaves pi(x | G(x) <= lambda) invariant.
  /// `g` must be the limit-state value of `x` and satisfy g <= lambda.
  /// Exactly one limit-state evaluation is spent.
  virtual McmcOutcome mcmc_step(const StateVector& x, double g, double lambda,
                                Rng& rng) const = 0;
};

/// Standard normal prior in n dimensions with G(x) = beta - sum(x) / sqrt(n).
/// The kernel is the preconditioned Crank-Nicolson proposal
/// x' = sqrt(1 - s^2) x + s z, which is reversible for the prior, so the
/// acceptance test reduces to the level constraint.
class NormalLinearModel final : public LimitStateModel {
 public:
  NormalLinearModel(std::size_t n, double beta, double step);

  std::string name() const override { return "normal"; }
  std::size_t dimension() const override { return n_; }
  double beta() const { return beta_; }
  double step() const { return step_; }

  NormalLinearModel with_step(double step) const { return {n_, beta_, step}; }

  StateVector sample_prior(Rng& rng) const override;
  double limit_state(std::span<const double> x) const override;
  McmcOutcome mcmc_step(const StateVector& x, double g, double lambda,
                        Rng& rng) const override;

 private:
  std::size_t n_;
  double beta_;
  double step_;
  double contraction_;
  double inv_sqrt_n_;
};

/// Fiber bundle with equal load sharing, stiffness kappa and i.i.d. U[0,1)
/// breaking strains. G(x) is the peak bundle force minus the applied load.
class FiberBundleModel final : public LimitStateModel {
 public:
  FiberBundleModel(std::size_t n_fibers, double kappa, double load);

  std::string name() const override { return "fbm"; }
  std::size_t dimension() const override { return n_; }
  double kappa() const { return kappa_; }
  double load() const { return load_; }

  /// Peak of the mean force curve, kappa N / 4, attained at extension 1/2.
  double critical_load() const { return kappa_ * static_cast<double>(n_) / 4.0; }
  static constexpr double critical_extension() { return 0.5; }

  /// F(eps) = sum_i kappa eps theta(x_i - eps), with theta(0) = 1.
  double force(std::span<const double> x, double extension) const;
  double mean_force(double extension) const;
  double force_variance(double extension) const;

  StateVector sample_prior(Rng& rng) const override;

  /// kappa * max_j j x_(j) - L over thresholds sorted in descending order.
  double limit_state(std::span<const double> x) const override;

  /// Metropolis move: one uniformly chosen fiber gets a fresh U[0,1) threshold.
  McmcOutcome mcmc_step(const StateVector& x, double g, double lambda,
                        Rng& rng) const override;

 private:
  std::size_t n_;
  double kappa_;
  double load_;
};

/// Standard normal CDF, relative accuracy ~1e-15 across [-8, 8].
double normal_cdf(double z);

/// pi(G <= lambda) = Phi(lambda - beta) for the normal linear model.
double exact_normal_curve(double beta, double lambda);

}  // namespace awh
