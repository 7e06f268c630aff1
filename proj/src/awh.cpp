#include "awh/awh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "awh/errors.hpp"

namespace awh {

void AwhConfig::validate() const {
  if (iterations < 1) throw ConfigError("awh: iterations must be >= 1");
  if (n_init && !(*n_init > 0.0)) throw ConfigError("awh: n_init must be > 0");
  if (!(reset_tolerance > 1.0)) throw ConfigError("awh: reset_tolerance must be > 1");
  if (!(gamma >= 0.0)) throw ConfigError("awh: gamma must be >= 0");
  if (!(alpha_floor >= 0.0 && alpha_floor <= 1.0)) {
    throw ConfigError("awh: alpha_floor must lie in [0, 1]");
  }
  if (mcmc_steps_per_iteration < 1) throw ConfigError("awh: mcmc_steps_per_iteration must be >= 1");
  if (adapt_interval < 1) throw ConfigError("awh: adapt_interval must be >= 1");
  if (!initial_f.empty() && initial_f.size() != ladder.size()) {
    throw ConfigError("awh: initial_f has " + std::to_string(initial_f.size()) +
                      " entries, ladder has " + std::to_string(ladder.size()) + " levels");
  }
}

AwhState AwhState::initial(const LimitStateModel& model, const AwhConfig& config, Rng& rng) {
  const std::size_t levels = config.ladder.size();
  AwhState s;
  s.f = config.initial_f.empty() ? std::vector<double>(levels, 0.0) : config.initial_f;
  s.target.assign(levels, 1.0 / static_cast<double>(levels));
  s.initial_mass = config.initial_mass();
  s.W.resize(levels);
  for (std::size_t k = 0; k < levels; ++k) s.W[k] = s.initial_mass * s.target[k];
  s.n_eff = std::accumulate(s.W.begin(), s.W.end(), 0.0);
  s.m = config.ladder.top();
  s.x = model.sample_prior(rng);
  s.g_current = model.limit_state(s.x);
  s.evals = 1;
  return s;
}

void gibbs_weights(double g, std::span<const double> f, const LevelLadder& ladder,
                   std::span<double> out) {
  if (f.size() != ladder.size() || out.size() != ladder.size()) {
    throw InvariantError("gibbs_weights: f and output must have one entry per level");
  }
  const std::size_t first = ladder.first_admissible(g);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(first), 0.0);
  const double shift = *std::max_element(f.begin() + static_cast<std::ptrdiff_t>(first), f.end());
  double total = 0.0;
  for (std::size_t k = first; k < f.size(); ++k) {
    out[k] = std::exp(f[k] - shift);
    total += out[k];
  }
  for (std::size_t k = first; k < f.size(); ++k) out[k] /= total;
}

std::vector<double> gibbs_weights(double g, std::span<const double> f, const LevelLadder& ladder) {
  std::vector<double> w(ladder.size());
  gibbs_weights(g, f, ladder, w);
  return w;
}

void update_weight_histogram(AwhState& state, std::span<const double> w) {
  for (std::size_t k = 0; k < state.W.size(); ++k) state.W[k] += w[k];
  state.n_eff += 1.0;
}

void update_f(AwhState& state, std::span<const double> W_prev) {
  for (std::size_t k = 0; k < state.f.size(); ++k) {
    state.f[k] -= std::log(state.W[k] / (W_prev[k] + state.target[k]));
  }
}

void sample_level(AwhState& state, std::span<const double> w, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = w.size();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] <= 0.0) continue;
    last_positive = k;
    cumulative += w[k];
    if (u < cumulative) {
      state.m = k;
      return;
    }
  }
  if (last_positive == w.size()) throw InvariantError("sample_level: all weights are zero");
  // Rounding left the cumulative sum just under u.
  state.m = last_positive;
}

bool covering_reset(AwhState& state, double c) {
  const double n = std::accumulate(state.W.begin(), state.W.end(), 0.0);
  bool capped = false;
  for (std::size_t k = 0; k < state.W.size(); ++k) {
    const double cap = c * n * state.target[k];
    if (state.W[k] > cap) {
      state.W[k] = cap;
      capped = true;
    }
  }
  if (capped) {
    const double after = std::accumulate(state.W.begin(), state.W.end(), 0.0);
    state.removed_mass += state.n_eff - after;
    state.n_eff = after;
  }
  return capped;
}

double target_alpha(double min_weight, double gamma, double floor) {
  return std::min(1.0, gamma / (gamma + min_weight) + floor);
}

std::vector<double> mixed_target(std::span<const double> F, double alpha) {
  const std::size_t levels = F.size();
  const double uniform = 1.0 / static_cast<double>(levels);
  std::vector<double> slope(levels);
  if (levels == 1) {
    slope[0] = 0.0;
  } else {
    slope.front() = std::abs(F[1] - F[0]);
    slope.back() = std::abs(F[levels - 1] - F[levels - 2]);
    for (std::size_t k = 1; k + 1 < levels; ++k) slope[k] = 0.5 * std::abs(F[k + 1] - F[k - 1]);
  }
  const double z = std::accumulate(slope.begin(), slope.end(), 0.0);
  std::vector<double> target(levels, uniform);
  if (!(z > 0.0) || !std::isfinite(z)) return target;
  for (std::size_t k = 0; k < levels; ++k) {
    target[k] = alpha * uniform + (1.0 - alpha) * slope[k] / z;
  }
  const double total = std::accumulate(target.begin(), target.end(), 0.0);
  for (auto& t : target) t /= total;
  return target;
}

void adapt_target(AwhState& state, double gamma, double floor) {
  std::vector<double> F(state.f.size());
  for (std::size_t k = 0; k < F.size(); ++k) F[k] = state.f[k] - std::log(state.target[k]);
  const double min_w = *std::min_element(state.W.begin(), state.W.end());
  auto target = mixed_target(F, target_alpha(min_w, gamma, floor));
  for (std::size_t k = 0; k < F.size(); ++k) state.f[k] = F[k] + std::log(target[k]);
  state.target = std::move(target);
}

std::vector<CurvePoint> monotone_curve(const LevelLadder& ladder, std::span<const double> F) {
  if (F.size() != ladder.size()) throw ConfigError("free energy length does not match the ladder");
  const std::size_t top = ladder.size() - 1;
  std::vector<CurvePoint> curve(ladder.size());
  double log_prob = 0.0;
  for (std::size_t k = ladder.size(); k-- > 0;) {
    log_prob = std::min(log_prob, F[top] - F[k]);
    curve[k] = CurvePoint::from_log(ladder[k], log_prob);
  }
  return curve;
}

std::vector<double> free_energies(const AwhState& state) {
  std::vector<double> F(state.f.size());
  for (std::size_t k = 0; k < F.size(); ++k) F[k] = state.f[k] - std::log(state.target[k]);
  const double top = F.back();
  for (auto& v : F) v -= top;
  return F;
}

namespace {

void check_invariants(const AwhState& s, const LevelLadder& ladder) {
  if (!(s.g_current <= ladder[s.m])) {
    throw InvariantError("awh: state left its level at iteration " + std::to_string(s.iteration));
  }
  const double mass = std::accumulate(s.W.begin(), s.W.end(), 0.0);
  const double expected = s.initial_mass + static_cast<double>(s.iteration) - s.removed_mass;
  if (std::abs(mass - expected) > 1e-6 * expected || std::abs(mass - s.n_eff) > 1e-9 * mass) {
    throw InvariantError("awh: histogram mass drifted at iteration " +
                         std::to_string(s.iteration));
  }
}

HistogramSnapshot snapshot(const AwhState& s) {
  return {s.iteration, s.W, s.f, s.target, free_energies(s)};
}

}  // namespace

RunResult run_awh(const LimitStateModel& model, const AwhConfig& config, Rng& rng) {
  config.validate();
  const LevelLadder& ladder = config.ladder;
  const std::size_t top = ladder.top();

  AwhState s = AwhState::initial(model, config, rng);

  std::vector<std::uint64_t> snapshot_at = config.snapshot_iterations;
  std::sort(snapshot_at.begin(), snapshot_at.end());
  auto next_snapshot = snapshot_at.begin();

  RunResult result{.ladder = ladder};
  std::vector<double> w(ladder.size());
  std::vector<double> W_prev(ladder.size());

  for (std::uint64_t n = 1; n <= config.iterations; ++n) {
    s.iteration = n;

    // Step 1: move x at fixed level; the unrestricted level samples the prior.
    if (s.m == top) {
      s.x = model.sample_prior(rng);
      s.g_current = model.limit_state(s.x);
      ++s.evals;
    } else {
      for (unsigned step = 0; step < config.mcmc_steps_per_iteration; ++step) {
        auto outcome = model.mcmc_step(s.x, s.g_current, ladder[s.m], rng);
        s.x = std::move(outcome.state);
        s.g_current = outcome.g_value;
        s.evals += outcome.evaluations;
      }
    }

    if (config.target_mode == TargetMode::adaptive && n % config.adapt_interval == 0) {
      adapt_target(s, config.gamma, config.alpha_floor);
    }

    // Steps 2-4: weights, histogram, level, hyper parameters.
    gibbs_weights(s.g_current, s.f, ladder, w);
    W_prev = s.W;
    update_weight_histogram(s, w);
    sample_level(s, w, rng);
    update_f(s, W_prev);

    if (config.covering_reset && n % config.adapt_interval == 0) {
      covering_reset(s, config.reset_tolerance);
    }

    check_invariants(s, ladder);

    while (next_snapshot != snapshot_at.end() && *next_snapshot == n) {
      result.snapshots.push_back(snapshot(s));
      ++next_snapshot;
    }
  }

  result.F = free_energies(s);
  result.curve = monotone_curve(ladder, result.F);
  result.p_failure = result.curve.front().prob;
  result.W_final = s.W;
  result.target_final = s.target;
  result.f_final = s.f;
  result.evals = s.evals;
  result.iterations = s.iteration;
  result.removed_mass = s.removed_mass;
  return result;
}

}  // namespace awh
