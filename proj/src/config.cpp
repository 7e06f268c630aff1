#include "awh/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "awh/errors.hpp"

namespace awh {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

/// Walks one JSON object, remembering which keys were consumed so that
/// leftovers can be rejected.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!node_.contains(key)) return fallback;
    return convert<T>(key);
  }

  template <typename T>
  T require(const std::string& key) {
    if (!node_.contains(key)) throw ConfigError(where() + "missing required key '" + key + "'");
    return convert<T>(key);
  }

  template <typename T>
  std::optional<T> optional(const std::string& key) {
    if (!node_.contains(key) || node_.at(key).is_null()) {
      used_.insert(key);
      return std::nullopt;
    }
    return convert<T>(key);
  }

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(node_.at(key), qualified(key));
  }

  void finish() const {
    for (const auto& item : node_.items()) {
      if (!used_.count(item.key())) {
        throw ConfigError("unknown key '" + qualified(item.key()) + "'");
      }
    }
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  std::string where() const { return path_.empty() ? "" : "'" + path_ + "': "; }

  template <typename T>
  T convert(const std::string& key) {
    used_.insert(key);
    const json& v = node_.at(key);
    const auto fail = [&](const char* expected) {
      return ConfigError("key '" + qualified(key) + "': expected " + expected);
    };
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw fail("a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned()) throw fail("a nonnegative integer");
      return static_cast<T>(v.get<std::uint64_t>());
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw fail("a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw fail("a string");
      return v.get<std::string>();
    } else {
      // vector of unsigned integers
      if (!v.is_array()) throw fail("an array of nonnegative integers");
      T out;
      for (const auto& e : v) {
        if (!e.is_number_unsigned()) throw fail("an array of nonnegative integers");
        out.push_back(static_cast<typename T::value_type>(e.get<std::uint64_t>()));
      }
      return out;
    }
  }

  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

ModelSpec parse_model(Section s) {
  const auto name = s.require<std::string>("name");
  ModelSpec spec;
  if (name == "normal") {
    NormalModelSpec m;
    m.n = s.get<std::size_t>("n", m.n);
    m.beta = s.get<double>("beta", m.beta);
    m.s = s.get<double>("s", m.s);
    spec = m;
  } else if (name == "fbm") {
    FbmModelSpec m;
    m.n_fibers = s.get<std::size_t>("n_fibers", m.n_fibers);
    m.kappa = s.get<double>("kappa", m.kappa);
    m.load = s.get<double>("load", m.load);
    spec = m;
  } else {
    throw ConfigError("key 'model.name': unknown model '" + name + "' (expected normal or fbm)");
  }
  s.finish();
  return spec;
}

MethodSpec parse_method(Section s) {
  const auto name = s.require<std::string>("name");
  MethodSpec spec;
  if (name == "awh") {
    AwhMethodSpec m;
    m.iterations = s.get<std::uint64_t>("iterations", m.iterations);
    m.n_init = s.optional<double>("n_init");
    m.reset_tolerance = s.get<double>("reset_tolerance", m.reset_tolerance);
    m.covering_reset = s.get<bool>("covering_reset", m.covering_reset);
    m.gamma = s.get<double>("gamma", m.gamma);
    m.alpha_floor = s.get<double>("alpha_floor", m.alpha_floor);
    const auto mode = s.get<std::string>("target_mode", "adaptive");
    if (mode == "adaptive") {
      m.target_mode = TargetMode::adaptive;
    } else if (mode == "uniform") {
      m.target_mode = TargetMode::uniform;
    } else {
      throw ConfigError("key 'method.target_mode': expected 'uniform' or 'adaptive'");
    }
    m.mcmc_steps_per_iteration =
        s.get<unsigned>("mcmc_steps_per_iteration", m.mcmc_steps_per_iteration);
    m.adapt_interval = s.get<std::uint64_t>("adapt_interval", m.adapt_interval);
    spec = m;
  } else if (name == "subset") {
    SubsetConfig m;
    m.population = s.get<std::size_t>("population", m.population);
    m.p0 = s.get<double>("p0", m.p0);
    m.chain_steps = s.get<std::size_t>("chain_steps", m.chain_steps);
    m.max_levels = s.get<std::size_t>("max_levels", m.max_levels);
    m.proposal_step = s.optional<double>("proposal_step");
    spec = m;
  } else if (name == "crude") {
    CrudeConfig m;
    m.samples = s.get<std::uint64_t>("samples", m.samples);
    spec = m;
  } else {
    throw ConfigError("key 'method.name': unknown method '" + name +
                      "' (expected awh, subset or crude)");
  }
  s.finish();
  return spec;
}

LadderSpec parse_ladder(Section s) {
  LadderSpec spec;
  spec.lambda_step = s.require<double>("lambda_step");
  spec.m_finite = s.optional<std::size_t>("m_finite");
  spec.pilot_samples = s.optional<std::size_t>("pilot_samples");
  s.finish();
  return spec;
}

RunSpec parse_run(Section s) {
  RunSpec spec;
  spec.seed = s.get<std::uint64_t>("seed", spec.seed);
  spec.snapshots = s.get<std::vector<std::uint64_t>>("snapshots", {});
  s.finish();
  return spec;
}

ReplicationSpec parse_replication(Section s) {
  ReplicationSpec spec;
  spec.replicates = s.require<std::size_t>("replicates");
  spec.reference = s.require<double>("reference");
  spec.reference_source = s.get<std::string>("reference_source", "");
  s.finish();
  return spec;
}

OutputSpec parse_output(Section s) {
  OutputSpec spec;
  spec.directory = s.get<std::string>("directory", spec.directory);
  spec.curve = s.get<bool>("curve", spec.curve);
  spec.histogram = s.get<bool>("histogram", spec.histogram);
  spec.f_trace = s.get<bool>("f_trace", spec.f_trace);
  s.finish();
  return spec;
}

SweepSpec parse_sweep(Section s) {
  SweepSpec spec;
  spec.population = s.get<std::vector<std::size_t>>("population", {});
  spec.chain_steps = s.get<std::vector<std::size_t>>("chain_steps", {});
  s.finish();
  return spec;
}

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("config syntax error at " + locate(text, e.byte) + ": " + e.what());
  }

  Section top(root, "");
  ExperimentConfig config;
  config.description = top.get<std::string>("description", "");
  if (!top.has("model")) throw ConfigError("missing required section 'model'");
  if (!top.has("method")) throw ConfigError("missing required section 'method'");
  config.model = parse_model(top.child("model"));
  config.method = parse_method(top.child("method"));
  if (top.has("ladder")) config.ladder = parse_ladder(top.child("ladder"));
  if (top.has("run")) config.run = parse_run(top.child("run"));
  if (top.has("replication")) config.replication = parse_replication(top.child("replication"));
  if (top.has("output")) config.output = parse_output(top.child("output"));
  if (top.has("sweep")) config.sweep = parse_sweep(top.child("sweep"));
  top.finish();

  validate_config(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  ordered root;
  if (!c.description.empty()) root["description"] = c.description;

  ordered model;
  std::visit(
      [&model](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalModelSpec>) {
          model = {{"name", "normal"}, {"n", m.n}, {"beta", m.beta}, {"s", m.s}};
        } else {
          model = {{"name", "fbm"}, {"n_fibers", m.n_fibers}, {"kappa", m.kappa}, {"load", m.load}};
        }
      },
      c.model);
  root["model"] = model;

  ordered method;
  std::visit(
      [&method](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AwhMethodSpec>) {
          method = {{"name", "awh"},
                    {"iterations", m.iterations},
                    {"reset_tolerance", m.reset_tolerance},
                    {"covering_reset", m.covering_reset},
                    {"gamma", m.gamma},
                    {"alpha_floor", m.alpha_floor},
                    {"target_mode", m.target_mode == TargetMode::adaptive ? "adaptive" : "uniform"},
                    {"mcmc_steps_per_iteration", m.mcmc_steps_per_iteration},
                    {"adapt_interval", m.adapt_interval}};
          if (m.n_init) method["n_init"] = *m.n_init;
        } else if constexpr (std::is_same_v<T, SubsetConfig>) {
          method = {{"name", "subset"},
                    {"population", m.population},
                    {"p0", m.p0},
                    {"chain_steps", m.chain_steps},
                    {"max_levels", m.max_levels}};
          if (m.proposal_step) method["proposal_step"] = *m.proposal_step;
        } else {
          method = {{"name", "crude"}, {"samples", m.samples}};
        }
      },
      c.method);
  root["method"] = method;

  if (c.ladder) {
    ordered ladder{{"lambda_step", c.ladder->lambda_step}};
    if (c.ladder->m_finite) ladder["m_finite"] = *c.ladder->m_finite;
    if (c.ladder->pilot_samples) ladder["pilot_samples"] = *c.ladder->pilot_samples;
    root["ladder"] = ladder;
  }
  root["run"] = {{"seed", c.run.seed}, {"snapshots", c.run.snapshots}};
  if (c.replication) {
    root["replication"] = {{"replicates", c.replication->replicates},
                           {"reference", c.replication->reference},
                           {"reference_source", c.replication->reference_source}};
  }
  root["output"] = {{"directory", c.output.directory},
                    {"curve", c.output.curve},
                    {"histogram", c.output.histogram},
                    {"f_trace", c.output.f_trace}};
  if (c.sweep) {
    root["sweep"] = {{"population", c.sweep->population}, {"chain_steps", c.sweep->chain_steps}};
  }
  return root.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  auto model = make_model(c.model);

  const bool is_awh = std::holds_alternative<AwhMethodSpec>(c.method);
  if (is_awh && !c.ladder) throw ConfigError("method 'awh' requires a 'ladder' section");
  if (c.ladder) {
    if (!(c.ladder->lambda_step > 0.0)) throw ConfigError("key 'ladder.lambda_step': must be > 0");
    if (c.ladder->m_finite.has_value() == c.ladder->pilot_samples.has_value()) {
      throw ConfigError("section 'ladder': set exactly one of 'm_finite' and 'pilot_samples'");
    }
    if (c.ladder->m_finite && *c.ladder->m_finite < 1) {
      throw ConfigError("key 'ladder.m_finite': must be >= 1");
    }
    if (c.ladder->pilot_samples && *c.ladder->pilot_samples < 1) {
      throw ConfigError("key 'ladder.pilot_samples': must be >= 1");
    }
  }

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AwhMethodSpec>) {
          const LevelLadder probe = c.ladder->m_finite
                                        ? build_ladder(c.ladder->lambda_step, *c.ladder->m_finite)
                                        : build_ladder(c.ladder->lambda_step, 1);
          make_awh_config(m, probe, c.run.snapshots).validate();
        } else if constexpr (std::is_same_v<T, SubsetConfig>) {
          m.validate();
        } else {
          if (m.samples < 1) throw ConfigError("key 'method.samples': must be >= 1");
        }
      },
      c.method);

  if (c.replication) {
    if (c.replication->replicates < 1) {
      throw ConfigError("key 'replication.replicates': must be >= 1");
    }
    if (!(c.replication->reference > 0.0)) {
      throw ConfigError("key 'replication.reference': must be > 0");
    }
  }

  if (c.sweep) {
    const auto* subset = std::get_if<SubsetConfig>(&c.method);
    if (!subset) throw ConfigError("section 'sweep' is only supported for method 'subset'");
    std::vector<std::size_t> populations = c.sweep->population;
    std::vector<std::size_t> steps = c.sweep->chain_steps;
    if (populations.empty()) populations.push_back(subset->population);
    if (steps.empty()) steps.push_back(subset->chain_steps);
    for (auto p : populations) {
      for (auto s : steps) {
        SubsetConfig variant = *subset;
        variant.population = p;
        variant.chain_steps = s;
        variant.validate();
      }
    }
  }
  if (c.output.directory.empty()) throw ConfigError("key 'output.directory': must not be empty");
}

std::shared_ptr<const LimitStateModel> make_model(const ModelSpec& spec) {
  return std::visit(
      [](const auto& m) -> std::shared_ptr<const LimitStateModel> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalModelSpec>) {
          return std::make_shared<NormalLinearModel>(m.n, m.beta, m.s);
        } else {
          return std::make_shared<FiberBundleModel>(m.n_fibers, m.kappa, m.load);
        }
      },
      spec);
}

LevelLadder make_ladder(const LadderSpec& spec, const LimitStateModel& model, Rng& rng) {
  if (spec.m_finite) return build_ladder(spec.lambda_step, *spec.m_finite);
  return ladder_from_pilot(model, spec.pilot_samples.value_or(1), spec.lambda_step, rng);
}

AwhConfig make_awh_config(const AwhMethodSpec& spec, LevelLadder ladder,
                          std::vector<std::uint64_t> snapshots) {
  AwhConfig config{.ladder = std::move(ladder)};
  config.iterations = spec.iterations;
  config.n_init = spec.n_init;
  config.reset_tolerance = spec.reset_tolerance;
  config.covering_reset = spec.covering_reset;
  config.gamma = spec.gamma;
  config.alpha_floor = spec.alpha_floor;
  config.target_mode = spec.target_mode;
  config.mcmc_steps_per_iteration = spec.mcmc_steps_per_iteration;
  config.adapt_interval = spec.adapt_interval;
  config.snapshot_iterations = std::move(snapshots);
  return config;
}

std::string method_name(const MethodSpec& method) {
  switch (method.index()) {
    case 0: return "awh";
    case 1: return "subset";
    default: return "crude";
  }
}

ExperimentConfig preset_config(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return parse_config(p.json);
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (see list-presets)");
}

}  // namespace awh
