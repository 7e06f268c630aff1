#include "cli_app.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "awh/config.hpp"
#include "awh/csv.hpp"
#include "awh/errors.hpp"

namespace awh::cli {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 0;
};

ExperimentConfig resolve(const CommonOptions& opts) {
  if (opts.config_path.empty() == opts.preset.empty()) {
    throw ConfigError("give exactly one of --config PATH or --preset NAME");
  }
  ExperimentConfig config =
      opts.preset.empty() ? load_config(opts.config_path) : preset_config(opts.preset);
  if (opts.seed) config.run.seed = *opts.seed;
  if (!opts.out_dir.empty()) config.output.directory = opts.out_dir;
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
  return config;
}

std::string path_in(const ExperimentConfig& config, const std::string& name) {
  return (fs::path(config.output.directory) / name).string();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_summary(std::ostream& out, const std::string& method, double p, std::uint64_t evals,
                   double wall, std::uint64_t seed, const std::string& extra = "") {
  out << "method=" << method << " p_failure=" << format_number(p)
      << " log10_p=" << format_number(std::log10(p)) << " evals=" << evals
      << " wall_s=" << format_number(std::round(wall * 1000.0) / 1000.0) << " seed=" << seed
      << extra << "\n";
}

void run_awh_command(const ExperimentConfig& config, const AwhMethodSpec& spec,
                     const LimitStateModel& model, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.run.seed);
  LevelLadder ladder = make_ladder(*config.ladder, model, rng);
  const AwhConfig awh_config = make_awh_config(spec, ladder, config.run.snapshots);
  const RunResult result = run_awh(model, awh_config, rng);
  const double wall = seconds_since(start);

  if (config.output.curve) write_file(path_in(config, "curve.csv"), curve_csv(result.curve));
  if (config.output.histogram) {
    write_file(path_in(config, "histogram.csv"),
               histogram_csv(result.ladder, result.W_final, result.target_final));
    for (const auto& snap : result.snapshots) {
      write_file(path_in(config, "histogram_iter_" + std::to_string(snap.iteration) + ".csv"),
                 histogram_csv(result.ladder, snap.W, snap.target));
    }
  }
  if (config.output.f_trace && !result.snapshots.empty()) {
    write_file(path_in(config, "f_trace.csv"), f_trace_csv(result.ladder, result.snapshots));
  }
  print_summary(out, "awh", result.p_failure, result.evals, wall, config.run.seed,
                " levels=" + std::to_string(result.ladder.size()));
}

void run_subset_command(const ExperimentConfig& config, const SubsetConfig& base,
                        const LimitStateModel& model, std::ostream& out) {
  std::vector<std::size_t> populations{base.population};
  std::vector<std::size_t> steps{base.chain_steps};
  if (config.sweep) {
    if (!config.sweep->population.empty()) populations = config.sweep->population;
    if (!config.sweep->chain_steps.empty()) steps = config.sweep->chain_steps;
  }
  const bool sweeping = populations.size() * steps.size() > 1;

  std::uint64_t index = 0;
  for (std::size_t population : populations) {
    for (std::size_t chain_steps : steps) {
      SubsetConfig variant = base;
      variant.population = population;
      variant.chain_steps = chain_steps;
      Rng rng(sweeping ? derive_seed(config.run.seed, index) : config.run.seed);
      const auto start = std::chrono::steady_clock::now();
      const SubsetResult result = run_subset(model, variant, rng);
      const double wall = seconds_since(start);
      const std::string name = sweeping ? "curve_R" + std::to_string(population) + "_c" +
                                              std::to_string(chain_steps) + ".csv"
                                        : "curve.csv";
      if (config.output.curve) write_file(path_in(config, name), curve_csv(result.curve));
      print_summary(out, "subset", result.p_failure, result.evals, wall, config.run.seed,
                    " population=" + std::to_string(population) +
                        " chain_steps=" + std::to_string(chain_steps) +
                        " levels=" + std::to_string(result.completed_levels) +
                        " converged=" + (result.converged ? "true" : "false"));
      ++index;
    }
  }
}

void run_crude_command(const ExperimentConfig& config, const CrudeConfig& spec,
                       const LimitStateModel& model, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.run.seed);
  const CrudeEstimate e = crude_mc(model, spec.samples, rng);
  const double wall = seconds_since(start);
  if (config.output.curve) {
    const std::vector<CurvePoint> curve{CurvePoint::from_log(0.0, std::log(e.p)),
                                        CurvePoint::from_log(LevelLadder::kInfinity, 0.0)};
    write_file(path_in(config, "curve.csv"), curve_csv(curve));
  }
  print_summary(out, "crude", e.p, e.samples, wall, config.run.seed,
                " std_error=" + format_number(e.std_error));
}

int cmd_run(const CommonOptions& opts, std::ostream& out) {
  const ExperimentConfig config = resolve(opts);
  fs::create_directories(config.output.directory);
  const auto model = make_model(config.model);
  try {
    std::visit(
        [&](const auto& spec) {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, AwhMethodSpec>) {
            run_awh_command(config, spec, *model, out);
          } else if constexpr (std::is_same_v<T, SubsetConfig>) {
            run_subset_command(config, spec, *model, out);
          } else {
            run_crude_command(config, spec, *model, out);
          }
        },
        config.method);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(e.what()) + " (seed=" + std::to_string(config.run.seed) +
                             ")");
  }
  return kExitOk;
}

int cmd_replicate(const CommonOptions& opts, std::ostream& out) {
  const ExperimentConfig config = resolve(opts);
  if (!config.replication) throw ConfigError("replicate needs a 'replication' section");
  fs::create_directories(config.output.directory);

  auto model = make_model(config.model);
  MethodConfig method_config = std::visit(
      [&](const auto& spec) -> MethodConfig {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, AwhMethodSpec>) {
          Rng pilot(config.run.seed);
          return make_awh_config(spec, make_ladder(*config.ladder, *model, pilot));
        } else {
          return spec;
        }
      },
      config.method);
  const ReplicationStudy study{std::move(model), std::move(method_config), config.replication->replicates,
                               config.run.seed, config.replication->reference,
                               config.replication->reference_source};

  const auto start = std::chrono::steady_clock::now();
  const ErrorReport report = run_replication(study);
  const double wall = seconds_since(start);

  const std::string method = method_name(config.method);
  write_file(path_in(config, "replicates.csv"), replicates_csv(report, study.reference_value));
  write_file(path_in(config, "summary.csv"),
             summary_csv(method, report, study.reference_value, study.reference_source));
  out << "method=" << method << " replicates=" << report.estimates.size()
      << " rms_relative_error=" << format_number(report.rms_relative_error)
      << " mean=" << format_number(report.mean)
      << " reference=" << format_number(study.reference_value)
      << " evals_per_replicate=" << report.evals_per_replicate
      << " wall_s=" << format_number(std::round(wall * 1000.0) / 1000.0)
      << " seed=" << config.run.seed << "\n";
  return kExitOk;
}

int cmd_list_presets(const std::string& show, std::ostream& out) {
  if (!show.empty()) {
    out << serialize_config(preset_config(show));
    return kExitOk;
  }
  std::size_t width = 0;
  for (const auto& p : presets()) width = std::max(width, p.name.size());
  for (const auto& p : presets()) {
    out << p.name << std::string(width + 2 - p.name.size(), ' ') << p.summary << "\n";
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config (JSON)");
  cmd->add_option("--preset", opts.preset, "Bundled preset name instead of --config");
  cmd->add_option("--seed", opts.seed, "Override run.seed");
  cmd->add_option("--out", opts.out_dir, "Override output.directory");
  cmd->add_option("--threads", opts.threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rare-event failure probabilities with the accelerated weight histogram method"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  CommonOptions rep_opts;
  std::string show;
  auto* run = app.add_subcommand("run", "Run one estimation and write CSV artifacts");
  add_common(run, run_opts);
  auto* replicate = app.add_subcommand("replicate", "Run a replication study against a reference");
  add_common(replicate, rep_opts);
  auto* list = app.add_subcommand("list-presets", "List bundled experiment presets");
  list->add_option("--show", show, "Print the JSON of one preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, out);
    if (replicate->parsed()) return cmd_replicate(rep_opts, out);
    return cmd_list_presets(show, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace awh::cli
