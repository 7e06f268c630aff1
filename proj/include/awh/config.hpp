#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "awh/awh.hpp"
#include "awh/harness.hpp"
#include "awh/ladder.hpp"
#include "awh/models.hpp"
#include "awh/subset.hpp"

namespace awh {

struct NormalModelSpec {
  std::size_t n = 2;
  double beta = 6.0;
  double s = 0.5;
  bool operator==(const NormalModelSpec&) const = default;
};

struct FbmModelSpec {
  std::size_t n_fibers = 1000;
  double kappa = 1.0;
  double load = 200.0;
  bool operator==(const FbmModelSpec&) const = default;
};

using ModelSpec = std::variant<NormalModelSpec, FbmModelSpec>;

/// AwhConfig minus the ladder and snapshots, which live in their own sections.
struct AwhMethodSpec {
  std::uint64_t iterations = 100000;
  std::optional<double> n_init;
  double reset_tolerance = 1.5;
  bool covering_reset = true;
  double gamma = 100.0;
  double alpha_floor = 0.01;
  TargetMode target_mode = TargetMode::adaptive;
  unsigned mcmc_steps_per_iteration = 1;
  std::uint64_t adapt_interval = 100;
  bool operator==(const AwhMethodSpec&) const = default;
};

using MethodSpec = std::variant<AwhMethodSpec, SubsetConfig, CrudeConfig>;

/// Uniform ladder from 0. Exactly one of m_finite / pilot_samples is set.
struct LadderSpec {
  double lambda_step = 0.1;
  std::optional<std::size_t> m_finite;
  std::optional<std::size_t> pilot_samples;
  bool operator==(const LadderSpec&) const = default;
};

struct RunSpec {
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> snapshots;
  bool operator==(const RunSpec&) const = default;
};

struct ReplicationSpec {
  std::size_t replicates = 1;
  double reference = 0.0;
  std::string reference_source;
  bool operator==(const ReplicationSpec&) const = default;
};

struct OutputSpec {
  std::string directory = "out";
  bool curve = true;
  bool histogram = true;
  bool f_trace = true;
  bool operator==(const OutputSpec&) const = default;
};

/// Subset-only parameter grid; each combination is one run.
struct SweepSpec {
  std::vector<std::size_t> population;
  std::vector<std::size_t> chain_steps;
  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  std::string description;
  ModelSpec model;
  MethodSpec method;
  std::optional<LadderSpec> ladder;
  RunSpec run;
  std::optional<ReplicationSpec> replication;
  OutputSpec output;
  std::optional<SweepSpec> sweep;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates a JSON experiment description. Unknown keys, wrong
/// types and invalid physical parameters raise ConfigError; syntax errors
/// report line and column.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Throws ConfigError if the sections are inconsistent or out of range.
void validate_config(const ExperimentConfig& config);

std::shared_ptr<const LimitStateModel> make_model(const ModelSpec& spec);

/// Builds the ladder, running the pilot simulation on `rng` if requested.
LevelLadder make_ladder(const LadderSpec& spec, const LimitStateModel& model, Rng& rng);

AwhConfig make_awh_config(const AwhMethodSpec& spec, LevelLadder ladder,
                          std::vector<std::uint64_t> snapshots = {});

std::string method_name(const MethodSpec& method);

struct Preset {
  std::string name;
  std::string summary;
  std::string json;
};

const std::vector<Preset>& presets();

/// Throws ConfigError for an unknown name.
ExperimentConfig preset_config(std::string_view name);

}  // namespace awh
