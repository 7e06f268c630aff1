#include "awh/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "awh/errors.hpp"

namespace awh {

LevelLadder::LevelLadder(std::vector<double> finite) : levels_(std::move(finite)) {
  if (levels_.empty()) throw ConfigError("ladder: at least one finite level is required");
  if (levels_.front() != 0.0) throw ConfigError("ladder: lambda_0 must be 0");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (!std::isfinite(levels_[k])) throw ConfigError("ladder: finite levels must be finite");
    if (k > 0 && !(levels_[k - 1] < levels_[k])) {
      throw ConfigError("ladder: levels must be strictly increasing (index " +
                        std::to_string(k) + ")");
    }
  }
  levels_.push_back(kInfinity);
}

std::size_t LevelLadder::first_admissible(double g) const {
  return static_cast<std::size_t>(
      std::lower_bound(levels_.begin(), levels_.end(), g) - levels_.begin());
}

LevelLadder build_ladder(double step, std::size_t m_finite) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("ladder: lambda_step must be > 0");
  if (m_finite < 1) throw ConfigError("ladder: m_finite must be >= 1");
  std::vector<double> finite(m_finite);
  for (std::size_t k = 0; k < m_finite; ++k) finite[k] = static_cast<double>(k) * step;
  return LevelLadder(std::move(finite));
}

LevelLadder ladder_covering(double max_g, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("ladder: lambda_step must be > 0");
  if (!(max_g > 0.0)) {
    throw ConfigError("ladder: largest pilot G is " + std::to_string(max_g) +
                      " <= 0; the system almost surely fails, use crude Monte Carlo instead");
  }
  if (!std::isfinite(max_g)) throw ConfigError("ladder: pilot produced a non-finite G");
  auto k = static_cast<std::size_t>(std::ceil(max_g / step));
  // Undo ceil() overshoot from representation error, e.g. 0.3 / 0.1.
  while (k > 1 && static_cast<double>(k - 1) * step >= max_g) --k;
  while (static_cast<double>(k) * step < max_g) ++k;
  return build_ladder(step, k + 1);
}

LevelLadder ladder_from_pilot(const LimitStateModel& model, std::size_t pilot_samples,
                              double step, Rng& rng) {
  if (pilot_samples < 1) throw ConfigError("ladder: pilot_samples must be >= 1");
  double max_g = -LevelLadder::kInfinity;
  for (std::size_t i = 0; i < pilot_samples; ++i) {
    max_g = std::max(max_g, model.limit_state(model.sample_prior(rng)));
  }
  return ladder_covering(max_g, step);
}

}  // namespace awh
