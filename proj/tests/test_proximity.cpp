#include <cmath>
#include <random>

#include "blehri/proximity.hpp"
#include "blehri/simulator.hpp"
#include "doctest.h"
#include "trace_gen.hpp"

using namespace blehri;

namespace {

const BeaconIdentity kP1(1, Attachment::Wrist);
const BeaconIdentity kP2(2, Attachment::Wrist);

}  // namespace

TEST_CASE("classify_zone: threshold is inclusive") {
  const ProximityConfig cfg;
  CHECK(cfg.close_threshold_dbm == -60);
  CHECK(cfg.presence_timeout_ms == 2000);
  CHECK(classify_zone(-55, cfg) == ProximityZone::Close);
  CHECK(classify_zone(-60, cfg) == ProximityZone::Close);
  CHECK(classify_zone(-61, cfg) == ProximityZone::InRoom);
  CHECK(classify_zone(-70, cfg) == ProximityZone::InRoom);
  CHECK(classify_zone(-70, ProximityConfig::half_metre_preset()) == ProximityZone::Close);
}

TEST_CASE("config validation") {
  ProximityConfig c;
  c.presence_timeout_ms = 0;
  CHECK_THROWS_AS(ProximityTracker{c}, std::invalid_argument);
  c = {};
  c.close_threshold_dbm = 30;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("tracker: hand-traced transitions") {
  ProximityTracker tr(ProximityConfig{});
  CHECK(tr.zone(kP1) == ProximityZone::Out);

  SUBCASE("Out + weak adv -> InRoom, then silence 2500 ms -> Out") {
    auto c = tr.on_advertisement({0, kP1, -80});
    REQUIRE(c.size() == 1);
    CHECK(c[0].zone == ProximityZone::InRoom);
    CHECK(tr.on_tick(1999).empty());
    CHECK(tr.zone(kP1) == ProximityZone::InRoom);
    c = tr.on_tick(2500);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == ZoneChange{2500, kP1, ProximityZone::Out});
    CHECK(tr.last_advertisement(kP1) == 0);
  }
  SUBCASE("Out + strong adv -> Close directly") {
    auto c = tr.on_advertisement({10, kP1, -50});
    REQUIRE(c.size() == 1);
    CHECK(c[0].zone == ProximityZone::Close);
    CHECK(tr.on_advertisement({110, kP1, -52}).empty());
    c = tr.on_advertisement({210, kP1, -75});
    REQUIRE(c.size() == 1);
    CHECK(c[0].zone == ProximityZone::InRoom);
  }
  SUBCASE("timeout boundary: exactly presence_timeout_ms of silence is Out") {
    tr.on_advertisement({0, kP1, -80});
    CHECK(tr.on_tick(2000).size() == 1);
  }
  SUBCASE("time regression") {
    tr.on_tick(500);
    CHECK_THROWS_AS(tr.on_advertisement({499, kP1, -50}), TimeRegression);
    CHECK_NOTHROW(tr.on_advertisement({500, kP1, -50}));
  }
  SUBCASE("beacons are independent") {
    tr.on_advertisement({0, kP1, -50});
    tr.on_advertisement({1500, kP2, -80});
    auto c = tr.on_tick(2100);
    REQUIRE(c.size() == 1);
    CHECK(c[0].beacon == kP1);
    CHECK(tr.zone(kP2) == ProximityZone::InRoom);
  }
}

TEST_CASE("tracker: hysteresis keeps Close within the margin") {
  ProximityConfig cfg;
  cfg.hysteresis_db = 3;
  ProximityTracker tr(cfg);
  tr.on_advertisement({0, kP1, -58});
  CHECK(tr.on_advertisement({100, kP1, -62}).empty());
  CHECK(tr.zone(kP1) == ProximityZone::Close);
  CHECK(tr.on_advertisement({200, kP1, -64}).size() == 1);
  CHECK(tr.zone(kP1) == ProximityZone::InRoom);
  // Entering Close still needs the plain threshold.
  CHECK(tr.on_advertisement({300, kP1, -61}).empty());
}

TEST_CASE("run: empty trace keeps every beacon Out") {
  ProximityRunOptions opt;
  opt.horizon_ms = 10'000;
  opt.beacons = std::vector<BeaconIdentity>{kP1, kP2};
  const auto tl = run_proximity(EventTrace{}, ProximityConfig{}, opt);
  CHECK(tl.changes().empty());
  CHECK(tl.time_in(kP1, ProximityZone::Out) == 10'000);
  CHECK(tl.time_in(kP2, ProximityZone::Close) == 0);
}

TEST_CASE("run: timeline lines and zone queries") {
  const auto trace = EventTrace::build({{0, kP1, -50}, {100, kP1, -70}}, {}, {});
  const auto tl = run_proximity(trace, ProximityConfig{});
  const std::vector<std::string> expected = {
      "zone 0 1-Wrist Close",
      "zone 100 1-Wrist InRoom",
      "zone 2100 1-Wrist Out",
  };
  CHECK(tl.to_lines() == expected);
  CHECK(tl.horizon_ms() == 2100);
  CHECK(tl.zone_at(kP1, 50) == ProximityZone::Close);
  CHECK(tl.zone_at(kP1, 2099) == ProximityZone::InRoom);
  CHECK(tl.time_in(kP1, ProximityZone::InRoom) == 2000);
  CHECK(tl.transitions_of(kP1).size() == 2);
}

TEST_CASE("run: noise-free recede crosses Close->InRoom->Out at the inverted times") {
  ScenarioConfig cfg;
  cfg.jitter_ms = 0;
  cfg.duration_ms = 480'000;
  ChannelModel ch;
  ch.path_loss.shadowing_sigma_db = 0;
  ch.receiver_sensitivity_dbm = -85;
  RecedeParams rp;  // 5 cm/s from 5 cm
  const auto trace = generate_recede_scenario(cfg, ch, rp);
  const ProximityConfig pc;
  const auto tl = run_proximity(trace, pc);
  const auto tr = tl.transitions_of(BeaconIdentity(0, Attachment::Wrist));
  REQUIRE(tr.size() == 2);
  CHECK(tl.zone_at(BeaconIdentity(0, Attachment::Wrist), 0) == ProximityZone::Close);

  // Rounded RSS drops below an integer level L once the expected value
  // passes L - 0.5.
  auto crossing_ms = [&](double level) {
    const double d = std::pow(10.0, (ch.path_loss.rss_at_1m_dbm - (level - 0.5)) /
                                        (10.0 * ch.path_loss.exponent_n));
    return (d - rp.start_m) / rp.speed_m_per_s * 1000.0;
  };
  const double to_inroom = crossing_ms(pc.close_threshold_dbm);
  const double to_out = crossing_ms(ch.receiver_sensitivity_dbm) + pc.presence_timeout_ms;
  CHECK(tr[0].zone == ProximityZone::InRoom);
  CHECK(std::abs(double(tr[0].t_ms) - to_inroom) <= 100.0);
  CHECK(tr[1].zone == ProximityZone::Out);
  CHECK(std::abs(double(tr[1].t_ms) - to_out) <= 100.0);
}

TEST_CASE("property: replay determinism and Out iff silent for the timeout") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 30; ++round) {
    const auto trace = testgen::random_trace(rng, {.max_events = 600, .span_ms = 30'000});
    ProximityConfig cfg;
    cfg.presence_timeout_ms = std::uniform_int_distribution<Millis>(100, 3000)(rng);
    ProximityRunOptions opt;
    opt.tick_ms = 100;
    const auto a = run_proximity(trace, cfg, opt);
    const auto b = run_proximity(trace, cfg, opt);
    CHECK(a.to_lines() == b.to_lines());

    for (auto beacon : trace.beacons()) {
      for (Millis t = 0; t <= a.horizon_ms(); t += opt.tick_ms) {
        bool heard = false;
        for (const auto& e : trace.advs_of(beacon)) {
          if (e.t_ms <= t && e.t_ms > t - cfg.presence_timeout_ms) heard = true;
        }
        CHECK((a.zone_at(beacon, t) == ProximityZone::Out) == !heard);
      }
    }
  }
}

TEST_CASE("property: threshold and pointwise-RSS monotonicity") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 50; ++round) {
    const auto trace = testgen::random_trace(rng, {.max_events = 500, .span_ms = 20'000});
    ProximityRunOptions opt;
    opt.horizon_ms = 25'000;
    const ProximityConfig low;
    ProximityConfig high;
    high.close_threshold_dbm = low.close_threshold_dbm + 1 + static_cast<int>(rng() % 20);
    const auto tl_low = run_proximity(trace, low, opt);
    const auto tl_high = run_proximity(trace, high, opt);

    std::vector<AdvEvent> boosted(trace.advs().begin(), trace.advs().end());
    for (auto& e : boosted) e.rss_dbm = std::min(kMaxDbm, e.rss_dbm + static_cast<int>(rng() % 15));
    const auto stronger = EventTrace::build(boosted, {}, {});
    const auto tl_strong = run_proximity(stronger, low, opt);

    for (auto b : trace.beacons()) {
      CHECK(tl_high.time_in(b, ProximityZone::Close) <= tl_low.time_in(b, ProximityZone::Close));
      CHECK(tl_strong.time_in(b, ProximityZone::Close) >= tl_low.time_in(b, ProximityZone::Close));
      CHECK(tl_strong.time_in(b, ProximityZone::Out) <= tl_low.time_in(b, ProximityZone::Out));
    }
  }
}
