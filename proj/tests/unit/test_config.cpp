#include <doctest.h>

#include <string>

#include "awh/config.hpp"
#include "awh/errors.hpp"

using namespace awh;

namespace {

const char* kMinimal = R"({
  "model": {"name": "normal", "n": 2, "beta": 3.0},
  "method": {"name": "awh", "iterations": 1000},
  "ladder": {"lambda_step": 0.1, "m_finite": 31}
})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config uses defaults") {
  const auto c = parse_config(kMinimal);
  CHECK(std::get<NormalModelSpec>(c.model).s == 0.5);
  const auto& m = std::get<AwhMethodSpec>(c.method);
  CHECK(m.iterations == 1000);
  CHECK(m.reset_tolerance == 1.5);
  CHECK(m.gamma == 100.0);
  CHECK(m.target_mode == TargetMode::adaptive);
  CHECK(c.run.seed == 1);
  CHECK_FALSE(c.replication.has_value());
}

TEST_CASE("every preset parses, validates and round-trips") {
  REQUIRE(presets().size() >= 7);
  for (const auto& preset : presets()) {
    CAPTURE(preset.name);
    const auto c = preset_config(preset.name);
    CHECK_NOTHROW(validate_config(c));
    CHECK(parse_config(serialize_config(c)) == c);
    CHECK(serialize_config(parse_config(serialize_config(c))) == serialize_config(c));
  }
  CHECK_THROWS_AS(preset_config("no-such-preset"), ConfigError);
}

TEST_CASE("preset contents") {
  const auto fig3 = preset_config("fig3-subset");
  REQUIRE(fig3.sweep.has_value());
  CHECK(fig3.sweep->population == std::vector<std::size_t>{100, 1000, 10000, 100000});
  const auto fig2 = preset_config("fig2");
  CHECK(fig2.run.snapshots.size() >= 5);
  const auto chain100 = preset_config("fig4-subset-chain100");
  CHECK(std::get<SubsetConfig>(chain100.method).chain_steps == 100);
  const auto normal = preset_config("normal-beta6");
  CHECK(normal.replication->replicates == 50);
  CHECK(normal.replication->reference == doctest::Approx(9.865876450377e-10).epsilon(1e-12));
}

TEST_CASE("unknown keys are rejected with their path") {
  const auto msg = error_of(R"({
    "model": {"name": "normal", "beta": 3.0, "betta": 2.0},
    "method": {"name": "awh"},
    "ladder": {"lambda_step": 0.1, "m_finite": 31}})");
  CHECK(msg.find("model.betta") != std::string::npos);
  CHECK(error_of(R"({"model": {"name": "normal"}, "method": {"name": "awh"},
    "ladder": {"lambda_step": 0.1, "m_finite": 3}, "extra": 1})").find("extra") != std::string::npos);
}

TEST_CASE("type and range errors") {
  CHECK(error_of(R"({"model": {"name": "normal", "beta": "six"}, "method": {"name": "crude"}})")
            .find("model.beta") != std::string::npos);
  CHECK_FALSE(error_of(R"({"model": {"name": "normal", "s": 1.5}, "method": {"name": "crude"}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "cube"}, "method": {"name": "crude"}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "normal"}, "method": {"name": "awh"}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "normal"}, "method": {"name": "awh"},
    "ladder": {"lambda_step": 0.1, "m_finite": 3, "pilot_samples": 100}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "normal"},
    "method": {"name": "subset", "population": 1000, "p0": 0.1234}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "normal"}, "method": {"name": "crude", "samples": -5}})").empty());
  CHECK_FALSE(error_of(R"({"model": {"name": "normal"}, "method": {"name": "awh"},
    "ladder": {"lambda_step": 0.1, "m_finite": 3}, "sweep": {"population": [100]}})").empty());
}

TEST_CASE("syntax errors report a position") {
  const auto msg = error_of("{\n  \"model\": {\"name\": \"normal\",,}\n}");
  CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("config to runtime objects") {
  const auto c = parse_config(kMinimal);
  const auto model = make_model(c.model);
  CHECK(model->dimension() == 2);
  Rng rng(1);
  const auto ladder = make_ladder(*c.ladder, *model, rng);
  CHECK(ladder.top() == 31);
  const auto awh_config = make_awh_config(std::get<AwhMethodSpec>(c.method), ladder, {10, 20});
  CHECK(awh_config.iterations == 1000);
  CHECK(awh_config.snapshot_iterations == std::vector<std::uint64_t>{10, 20});
  CHECK(method_name(c.method) == "awh");
}
