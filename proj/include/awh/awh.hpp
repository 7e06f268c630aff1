#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "awh/curve.hpp"
#include "awh/ladder.hpp"
#include "awh/models.hpp"
#include "awh/rng.hpp"

namespace awh {

enum class TargetMode { uniform, adaptive };

struct AwhConfig {
  LevelLadder ladder;
  std::uint64_t iterations = 100000;
  /// Initial histogram mass N_init; defaults to M when unset.
  std::optional<double> n_init;
  /// Cap factor c of the covering reset W_k <- min(W_k, c N pi_k).
  double reset_tolerance = 1.5;
  bool covering_reset = true;
  double gamma = 100.0;
  double alpha_floor = 0.01;
  TargetMode target_mode = TargetMode::adaptive;
  unsigned mcmc_steps_per_iteration = 1;
  /// Cadence of both target adaptation and the covering-reset check.
  std::uint64_t adapt_interval = 100;
  /// Optional initial guess for f; zeros when empty.
  std::vector<double> initial_f;
  /// Iterations after which W, f and the target are recorded.
  std::vector<std::uint64_t> snapshot_iterations;

  void validate() const;
  double initial_mass() const { return n_init.value_or(static_cast<double>(ladder.top())); }
};

/// Everything one AWH chain carries between iterations.
struct AwhState {
  std::vector<double> f;       // log hyper parameters f_k
  std::vector<double> W;       // weight histogram W_k
  std::vector<double> target;  // pi_k, sums to one
  std::size_t m = 0;
  StateVector x;
  double g_current = 0.0;
  double n_eff = 0.0;
  std::uint64_t evals = 0;
  std::uint64_t iteration = 0;
  double initial_mass = 0.0;
  double removed_mass = 0.0;

  /// f from the config guess, uniform target, W = N_init pi, m = M, x from the prior.
  static AwhState initial(const LimitStateModel& model, const AwhConfig& config, Rng& rng);
};

struct HistogramSnapshot {
  std::uint64_t iteration = 0;
  std::vector<double> W;
  std::vector<double> f;
  std::vector<double> target;
  std::vector<double> F;
};

struct RunResult {
  LevelLadder ladder;
  /// -ln pi(G <= lambda_k), gauge fixed so that F_M = 0.
  std::vector<double> F;
  std::vector<CurvePoint> curve;
  /// curve.front().prob; exp(-F_0) unless the raw estimate was not monotone.
  double p_failure = 0.0;
  std::vector<double> W_final;
  std::vector<double> target_final;
  std::vector<double> f_final;
  std::uint64_t evals = 0;
  std::uint64_t iterations = 0;
  double removed_mass = 0.0;
  std::vector<HistogramSnapshot> snapshots;
};

/// Conditional level distribution P(k | x) for a state with limit-state value g:
/// softmax of f over the admissible suffix k >= first_admissible(g), zero below it.
void gibbs_weights(double g, std::span<const double> f, const LevelLadder& ladder,
                   std::span<double> out);
std::vector<double> gibbs_weights(double g, std::span<const double> f, const LevelLadder& ladder);

/// W_k += w_k, N += 1.
void update_weight_histogram(AwhState& state, std::span<const double> w);

/// f_k -= ln(W_k / (W_prev_k + pi_k)), with W the already-updated histogram.
void update_f(AwhState& state, std::span<const double> W_prev);

/// Draws the next level index from w by inverse CDF.
void sample_level(AwhState& state, std::span<const double> w, Rng& rng);

/// Caps W_k at c N pi_k when any entry exceeds it. Returns whether anything was cut.
bool covering_reset(AwhState& state, double c);

/// alpha = min(1, gamma / (gamma + min_k W_k) + floor).
double target_alpha(double min_weight, double gamma, double floor);

/// alpha / (M + 1) + (1 - alpha) |dF_k| / Z with central differences of F.
/// Falls back to the uniform distribution when every dF_k is zero.
std::vector<double> mixed_target(std::span<const double> F, double alpha);

/// Replaces the target with mixed_target of the current estimates. f is
/// shifted by ln(pi_new / pi_old) so the estimates F = f - ln pi carry over.
void adapt_target(AwhState& state, double gamma, double floor);

/// F_k = f_k - ln pi_k, shifted so that F_M = 0.
std::vector<double> free_energies(const AwhState& state);

/// Curve exp(F_M - F_k), made non-decreasing in k by a running minimum from
/// the top level down. Equals the raw estimate whenever that is monotone.
std::vector<CurvePoint> monotone_curve(const LevelLadder& ladder, std::span<const double> F);

/// Runs the full AWH chain.
RunResult run_awh(const LimitStateModel& model, const AwhConfig& config, Rng& rng);

}  // namespace awh
