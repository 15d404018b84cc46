#include "blehri/scenario_config.hpp"
#include "doctest.h"

using namespace blehri;

TEST_CASE("defaults when the file is empty") {
  const auto s = parse_scenario("");
  CHECK(s.kind == ScenarioKind::Game);
  CHECK(s.config.adv_interval_ms == 100);
  CHECK(s.config.frame_interval_ms == 50);
  CHECK(s.channel.path_loss.rss_at_1m_dbm == -59.0);
  CHECK(s.channel.path_loss.exponent_n == 2.0);
  CHECK(s.channel.path_loss.shadowing_sigma_db == 4.0);
  CHECK(s.channel.occlusion.dip_attenuation_db == 15.0);
  CHECK_FALSE(s.random_script.has_value());
}

TEST_CASE("keys, comments and lists") {
  const auto s = parse_scenario(
      "# recede run\n"
      "scenario = recede\n"
      "seed = 99   # trailing comment\n"
      "tx_power_dbm = 0, -23\n"
      "shadowing_sigma_db = 0\n"
      "speed_m_per_s = 0.05\n"
      "start_m = 0.1\n");
  CHECK(s.kind == ScenarioKind::Recede);
  CHECK(s.config.rng_seed == 99);
  CHECK(s.config.tx_power_dbm == std::vector<int>{0, -23});
  CHECK(s.recede.start_m == doctest::Approx(0.1));
}

TEST_CASE("explicit touch script") {
  const auto s = parse_scenario("touch_script = 1000-1800:1, 2500-3100:2\n");
  REQUIRE(s.game.touch_script.size() == 2);
  CHECK(s.game.touch_script[1].start_ms == 2500);
  CHECK(s.game.touch_script[1].end_ms == 3100);
  CHECK(s.game.touch_script[1].person_id == 2);
  CHECK_THROWS_AS(parse_scenario("touch_script = 1000:1\n"), ConfigError);
}

TEST_CASE("random script parameters") {
  const auto s = parse_scenario("touch_script = random\ntouch_min_ms = 200\n");
  REQUIRE(s.random_script.has_value());
  CHECK(s.random_script->touch_min_ms == 200);
  const auto trace = generate_scenario(parse_scenario("duration_ms = 60000\ntouch_script = random\n"));
  CHECK_FALSE(trace.truths().empty());
}

TEST_CASE("errors name the key and line") {
  try {
    parse_scenario("seed = 1\nbogus_key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.key() == "bogus_key");
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
  try {
    parse_scenario("\n\njitter_ms = lots\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.key() == "jitter_ms");
  }
  CHECK_THROWS_AS(parse_scenario("scenario = orbit\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("packet_loss_rate = 1.5\n"), ConfigError);
}
