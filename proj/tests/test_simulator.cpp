#include <cmath>
#include <map>

#include "blehri/simulator.hpp"
#include "blehri/touch.hpp"
#include "doctest.h"

using namespace blehri;

namespace {

ChannelModel noise_free() {
  ChannelModel ch;
  ch.path_loss.shadowing_sigma_db = 0;
  return ch;
}

}  // namespace

TEST_CASE("expected_rss follows the log-distance model") {
  const PathLossModel m;
  CHECK(expected_rss(1.0, m) == doctest::Approx(-59.0));
  CHECK(expected_rss(10.0, m) == doctest::Approx(-79.0));
  CHECK(expected_rss(100.0, m) == doctest::Approx(-99.0));
  CHECK(expected_rss(0.05, m) > expected_rss(0.06, m));
  CHECK_THROWS_AS(expected_rss(0.0, m), NonpositiveDistance);
  CHECK_THROWS_AS(expected_rss(-1.0, m), NonpositiveDistance);
}

TEST_CASE("sample_adv: noise-free, occluded and lost samples") {
  Rng rng(1, 0);
  ChannelModel ch = noise_free();
  CHECK(sample_adv(-59.0, false, ch, rng) == -59);
  ch.occlusion.dip_attenuation_db = 15;
  CHECK(sample_adv(-59.0, true, ch, rng) == -74);
  CHECK(sample_adv(-200.0, false, ch, rng) == std::nullopt);  // below sensitivity
  ch.receiver_sensitivity_dbm = -200;
  CHECK(sample_adv(-200.0, false, ch, rng) == kMinDbm);
  CHECK(sample_adv(40.0, false, ch, rng) == kMaxDbm);
  ch.packet_loss_rate = 1.0;
  CHECK(sample_adv(-59.0, false, ch, rng) == std::nullopt);
}

TEST_CASE("sample_adv: fixed seed gives an identical stream") {
  ChannelModel ch;
  ch.packet_loss_rate = 0.2;
  Rng a(99, 2), b(99, 2), c(100, 2);
  int differ = 0;
  for (int i = 0; i < 500; ++i) {
    const auto x = sample_adv(-60.0, i % 7 == 0, ch, a);
    CHECK(x == sample_adv(-60.0, i % 7 == 0, ch, b));
    differ += x != sample_adv(-60.0, i % 7 == 0, ch, c);
  }
  CHECK(differ > 0);
}

TEST_CASE("Rng: uniform range and normal moments") {
  Rng rng(7, 1);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const Millis k = rng.uniform_int(-3, 3);
    CHECK((k >= -3 && k <= 3));
    const double z = rng.normal(0.0, 2.0);
    sum += z;
    sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.05).scale(1.0));
  CHECK(std::sqrt(sq / n) == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("recede: noise-free RSS is nonincreasing") {
  ScenarioConfig cfg;
  cfg.duration_ms = 120'000;
  const auto trace = generate_recede_scenario(cfg, noise_free(), {});
  REQUIRE(trace.advs().size() > 1000);
  CHECK(trace.frames().empty());
  CHECK(trace.truths().empty());
  for (std::size_t i = 1; i < trace.advs().size(); ++i) {
    CHECK(trace.advs()[i].rss_dbm <= trace.advs()[i - 1].rss_dbm);
  }
}

TEST_CASE("recede: 0 dBm and -23 dBm beacons differ by a constant 23 dB") {
  ScenarioConfig cfg;
  cfg.duration_ms = 60'000;
  cfg.jitter_ms = 0;
  cfg.tx_power_dbm = {0, -23};
  const auto trace = generate_recede_scenario(cfg, noise_free(), {});
  std::map<Millis, int> strong, weak;
  for (const auto& a : trace.advs()) (a.beacon.person_id() == 0 ? strong : weak)[a.t_ms] = a.rss_dbm;
  int compared = 0;
  for (auto [t, rss] : weak) {
    REQUIRE(strong.count(t));
    CHECK(strong[t] - rss == 23);
    ++compared;
  }
  CHECK(compared > 500);
}

TEST_CASE("recede: jitter stays within bounds and seeds are reproducible") {
  ScenarioConfig cfg;
  cfg.duration_ms = 30'000;
  cfg.jitter_ms = 15;
  ChannelModel ch;
  ch.packet_loss_rate = 0.1;
  const auto a = generate_recede_scenario(cfg, ch, {});
  const auto b = generate_recede_scenario(cfg, ch, {});
  CHECK(a == b);
  for (const auto& e : a.advs()) {
    const Millis nominal =
        cfg.jitter_ms + ((e.t_ms - cfg.jitter_ms + cfg.adv_interval_ms / 2) / cfg.adv_interval_ms) *
                            cfg.adv_interval_ms;
    CHECK(std::llabs(e.t_ms - nominal) <= cfg.jitter_ms);
  }
  cfg.rng_seed += 1;
  CHECK_FALSE(generate_recede_scenario(cfg, ch, {}) == a);
}

TEST_CASE("recede: parameter validation") {
  ScenarioConfig cfg;
  CHECK_THROWS_AS(generate_recede_scenario(cfg, {}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_recede_scenario(cfg, {}, {0.05, 0.0}), std::invalid_argument);
  cfg.tx_power_dbm = {0, 0, 0, 0, 0};
  CHECK_THROWS_AS(generate_recede_scenario(cfg, {}, {}), std::invalid_argument);
  cfg = {};
  cfg.jitter_ms = 50;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("occlusion never raises RSS above the noise-free level") {
  ScenarioConfig cfg;
  cfg.duration_ms = 60'000;
  cfg.jitter_ms = 0;
  ChannelModel clean = noise_free();
  ChannelModel dirty = clean;
  dirty.occlusion.dip_probability_per_adv = 0.3;
  dirty.packet_loss_rate = 0.2;
  const auto a = generate_recede_scenario(cfg, clean, {});
  const auto b = generate_recede_scenario(cfg, dirty, {});
  std::map<Millis, int> ref;
  for (const auto& e : a.advs()) ref[e.t_ms] = e.rss_dbm;
  int dipped = 0;
  for (const auto& e : b.advs()) {
    REQUIRE(ref.count(e.t_ms));
    CHECK(e.rss_dbm <= ref[e.t_ms]);
    dipped += e.rss_dbm < ref[e.t_ms];
  }
  CHECK(dipped > 0);
  CHECK(b.advs().size() < a.advs().size());
}

TEST_CASE("game: empty script has no touching frames and no truth") {
  ScenarioConfig cfg;
  cfg.duration_ms = 5000;
  const auto trace = generate_two_person_game(cfg, {}, {});
  CHECK(trace.truths().empty());
  CHECK(trace.frames().size() == 101);
  for (const auto& f : trace.frames()) CHECK_FALSE(ground_truth_touch(f));
  CHECK(trace.beacons().size() == 2);
}

TEST_CASE("game: frames follow the script and truths mirror it") {
  ScenarioConfig cfg;
  cfg.duration_ms = 8000;
  GameParams game;
  game.touch_script = {{4000, 4600, 2}, {1000, 1500, 1}};
  const auto trace = generate_two_person_game(cfg, noise_free(), game);
  REQUIRE(trace.truths().size() == 2);
  CHECK(trace.truths()[0] == GroundTruthTouch{1000, 1500, 1});
  for (const auto& f : trace.frames()) {
    const bool inside = (f.t_ms >= 1000 && f.t_ms < 1500) || (f.t_ms >= 4000 && f.t_ms < 4600);
    CHECK(ground_truth_touch(f) == inside);
  }
  // The toucher is at contact range during its touch.
  const auto toucher = trace.advs_of(BeaconIdentity(1, Attachment::Wrist));
  for (const auto& a : toucher) {
    if (a.t_ms >= 1000 && a.t_ms < 1500) CHECK(a.rss_dbm > -40);
    if (a.t_ms < 700) CHECK(a.rss_dbm < -60);
  }
}

TEST_CASE("game: overlapping script and unknown persons are rejected") {
  ScenarioConfig cfg;
  GameParams game;
  game.touch_script = {{1000, 2000, 1}, {1500, 2500, 2}};
  CHECK_THROWS_AS(generate_two_person_game(cfg, {}, game), OverlapError);
  game.touch_script = {{1000, 2000, 3}};
  CHECK_THROWS_AS(generate_two_person_game(cfg, {}, game), std::invalid_argument);
}

TEST_CASE("random_touch_script: non-overlapping, within duration, deterministic") {
  ScenarioConfig cfg;
  cfg.duration_ms = 120'000;
  const std::vector<int> persons = {1, 2};
  const auto s = random_touch_script(cfg, persons, {});
  REQUIRE(s.size() > 5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].start_ms < s[i].end_ms);
    CHECK(s[i].end_ms <= cfg.duration_ms);
    if (i) CHECK(s[i].start_ms >= s[i - 1].end_ms);
  }
  const auto again = random_touch_script(cfg, persons, {});
  CHECK(again.size() == s.size());
  CHECK(again.back().start_ms == s.back().start_ms);
}
