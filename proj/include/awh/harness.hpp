#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "awh/awh.hpp"
#include "awh/models.hpp"
#include "awh/rng.hpp"
#include "awh/subset.hpp"

namespace awh {

// ---------------------------------------------------------------------------
// Crude Monte Carlo
// ---------------------------------------------------------------------------

struct CrudeEstimate {
  double p = 0.0;
  /// Binomial standard error sqrt(p (1 - p) / n).
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
};

/// Samples are processed in chunks of this size; chunk c draws from stream
/// derive_seed(base, c), so the estimate does not depend on the thread count.
inline constexpr std::uint64_t kCrudeChunk = 1u << 16;

/// Fraction of prior samples with G <= 0. OpenMP over chunks.
CrudeEstimate crude_mc(const LimitStateModel& model, std::uint64_t samples, Rng& rng);

/// Serial reference for crude_mc; identical result for identical rng state.
CrudeEstimate crude_mc_serial(const LimitStateModel& model, std::uint64_t samples, Rng& rng);

// ---------------------------------------------------------------------------
// Fiber bundle oracle
// ---------------------------------------------------------------------------

/// kappa max_j x_j sum_i theta(x_i - x_j) - L by the O(N^2) double sum.
double direct_fbm_limit_state(std::span<const double> x, double kappa, double load);

/// pi(G <= 0) for a bundle of at most four fibers by tensor-grid quadrature.
///
/// The grid is aligned to the breakpoints L / (kappa c), c = 1..N: failure is
/// equivalent to "fewer than c thresholds exceed L / (kappa c) for every c",
/// so the indicator is constant on each open grid cell and the midpoint rule
/// is exact there. The grid is still refined until two successive levels agree
/// to 1e-4 relative; disagreement at the finest level throws with both values.
double fbm_oracle(std::size_t n_fibers, double kappa, double load);

// ---------------------------------------------------------------------------
// Replication studies
// ---------------------------------------------------------------------------

struct CrudeConfig {
  std::uint64_t samples = 1000000;
  bool operator==(const CrudeConfig&) const = default;
};

using MethodConfig = std::variant<AwhConfig, SubsetConfig, CrudeConfig>;

struct ReplicationStudy {
  std::shared_ptr<const LimitStateModel> model;
  MethodConfig method;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  double reference_value = 0.0;
  std::string reference_source;
};

struct ReplicateOutcome {
  double p_failure = 0.0;
  std::uint64_t evals = 0;
};

struct ErrorReport {
  std::vector<double> estimates;
  std::vector<std::uint64_t> evals;
  std::vector<std::uint64_t> seeds;
  double rms_relative_error = 0.0;
  double mean = 0.0;
  std::uint64_t evals_per_replicate = 0;
};

/// A replicate threw; carries what is needed to rerun it alone.
class ReplicateError : public std::runtime_error {
 public:
  ReplicateError(std::size_t index, std::uint64_t seed, const std::string& what);
  std::size_t index() const { return index_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
};

/// sqrt(mean(((est - ref) / ref)^2)).
double rms_relative_error(std::span<const double> estimates, double reference);

/// Seed of replicate `index`: derive_seed(master_seed, index).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t index);

/// One replicate of the study, seeded with replicate_seed(master, index).
ReplicateOutcome run_replicate(const ReplicationStudy& study, std::size_t index);

/// Runs all replicates on the OpenMP pool; results are ordered by index.
ErrorReport run_replication(const ReplicationStudy& study);

/// Serial reference for run_replication.
ErrorReport run_replication_serial(const ReplicationStudy& study);

}  // namespace awh
