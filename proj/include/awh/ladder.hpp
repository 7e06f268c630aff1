#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "awh/models.hpp"
#include "awh/rng.hpp"

namespace awh {

/// Threshold levels 0 = lambda_0 < ... < lambda_{M-1} < lambda_M = +inf.
class LevelLadder {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  /// `finite` holds lambda_0 .. lambda_{M-1}; the +inf level is appended.
  explicit LevelLadder(std::vector<double> finite);

  /// Index of the unrestricted level, M.
  std::size_t top() const { return levels_.size() - 1; }
  /// Number of levels, M + 1.
  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t k) const { return levels_[k]; }
  std::span<const double> levels() const { return levels_; }

  /// Smallest k with g <= lambda_k. Levels k >= first_admissible(g) admit g.
  std::size_t first_admissible(double g) const;

  bool operator==(const LevelLadder&) const = default;

 private:
  std::vector<double> levels_;
};

/// lambda_k = k * step for k < m_finite, then +inf.
LevelLadder build_ladder(double step, std::size_t m_finite);

/// Uniform ladder from 0 whose top finite level is the smallest multiple of
/// `step` that is >= max_g.
LevelLadder ladder_covering(double max_g, double step);

/// Draws `pilot_samples` prior states and covers the largest G seen.
LevelLadder ladder_from_pilot(const LimitStateModel& model, std::size_t pilot_samples,
                              double step, Rng& rng);

}  // namespace awh
