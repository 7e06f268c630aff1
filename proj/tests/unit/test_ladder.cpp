#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "awh/errors.hpp"
#include "awh/ladder.hpp"
#include "awh/models.hpp"

using namespace awh;

TEST_CASE("uniform ladder construction") {
  const auto ladder = build_ladder(0.1, 61);
  REQUIRE(ladder.size() == 62);
  CHECK(ladder.top() == 61);
  CHECK(ladder[0] == 0.0);
  CHECK(ladder[60] == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(std::isinf(ladder[61]));

  const auto unit = build_ladder(1.0, 61);
  CHECK(unit[60] == 60.0);
  CHECK(unit.size() == 62);
}

TEST_CASE("ladder validation") {
  CHECK_THROWS_AS(LevelLadder({}), ConfigError);
  CHECK_THROWS_AS(LevelLadder({0.5, 1.0}), ConfigError);  // must start at 0
  CHECK_THROWS_AS(LevelLadder({0.0, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(LevelLadder({0.0, 2.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(LevelLadder({0.0, std::numeric_limits<double>::infinity()}), ConfigError);
  CHECK_THROWS_AS(build_ladder(0.0, 5), ConfigError);
  CHECK_THROWS_AS(build_ladder(1.0, 0), ConfigError);
  CHECK_NOTHROW(LevelLadder({0.0}));
}

TEST_CASE("ladder covering a pilot maximum") {
  const auto a = ladder_covering(5.73, 0.1);
  CHECK(a[a.top() - 1] == doctest::Approx(5.8).epsilon(1e-14));
  CHECK(a.top() == 59);
  const auto b = ladder_covering(60.0, 1.0);
  CHECK(b[b.top() - 1] == 60.0);
  CHECK(b.top() == 61);
  const auto c = ladder_covering(6.0, 0.1);
  CHECK(c[c.top() - 1] == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(c.top() == 61);
  CHECK_THROWS_AS(ladder_covering(0.0, 0.1), ConfigError);
  CHECK_THROWS_AS(ladder_covering(-1.0, 0.1), ConfigError);
}

TEST_CASE("pilot ladder covers every pilot sample") {
  const NormalLinearModel model(2, 6.0, 0.5);
  Rng rng(12);
  const auto ladder = ladder_from_pilot(model, 1000, 0.1, rng);
  Rng replay(12);
  double max_g = 0.0;
  for (int i = 0; i < 1000; ++i) max_g = std::max(max_g, model.limit_state(model.sample_prior(replay)));
  CHECK(ladder[ladder.top() - 1] >= max_g);
  CHECK(ladder[ladder.top() - 1] < max_g + 0.1 + 1e-12);
}

TEST_CASE("first admissible level") {
  const auto ladder = build_ladder(1.0, 4);  // 0 1 2 3 inf
  CHECK(ladder.first_admissible(-0.5) == 0);
  CHECK(ladder.first_admissible(0.0) == 0);
  CHECK(ladder.first_admissible(0.5) == 1);
  CHECK(ladder.first_admissible(1.0) == 1);
  CHECK(ladder.first_admissible(3.0) == 3);
  CHECK(ladder.first_admissible(3.5) == 4);
  CHECK(ladder.first_admissible(1e300) == 4);
}
