#include "blehri/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blehri {

void PathLossModel::validate() const {
  if (!(exponent_n >= 0.0)) throw std::invalid_argument("exponent_n must be >= 0");
  if (!(shadowing_sigma_db >= 0.0)) throw std::invalid_argument("shadowing_sigma_db must be >= 0");
}

void OcclusionModel::validate() const {
  if (!(dip_probability_per_adv >= 0.0 && dip_probability_per_adv <= 1.0)) {
    throw std::invalid_argument("dip_probability_per_adv must be in [0, 1]");
  }
  if (!(dip_attenuation_db >= 0.0)) throw std::invalid_argument("dip_attenuation_db must be >= 0");
  if (dip_min_duration_ms <= 0 || dip_min_duration_ms > dip_max_duration_ms) {
    throw std::invalid_argument("dip durations must satisfy 0 < min <= max");
  }
}

void ChannelModel::validate() const {
  path_loss.validate();
  occlusion.validate();
  if (!(packet_loss_rate >= 0.0 && packet_loss_rate <= 1.0)) {
    throw std::invalid_argument("packet_loss_rate must be in [0, 1]");
  }
}

void ScenarioConfig::validate() const {
  if (adv_interval_ms <= 0 || frame_interval_ms <= 0) {
    throw std::invalid_argument("intervals must be > 0");
  }
  if (jitter_ms < 0 || 2 * jitter_ms >= adv_interval_ms) {
    throw std::invalid_argument("jitter_ms must be in [0, adv_interval_ms / 2)");
  }
  if (!(frame_drop_rate >= 0.0 && frame_drop_rate <= 1.0)) {
    throw std::invalid_argument("frame_drop_rate must be in [0, 1]");
  }
  if (duration_ms < 0) throw std::invalid_argument("duration_ms must be >= 0");
  if (tx_power_dbm.empty()) throw std::invalid_argument("tx_power_dbm needs at least one entry");
  for (int p : tx_power_dbm) {
    if (p < kMinDbm || p > kMaxDbm) throw std::invalid_argument("tx_power_dbm out of range");
  }
}

int ScenarioConfig::tx_power_of(std::size_t beacon_index) const {
  return tx_power_dbm.size() == 1 ? tx_power_dbm.front() : tx_power_dbm.at(beacon_index);
}

Rng::Rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Millis Rng::uniform_int(Millis lo, Millis hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<Millis>(uniform() * span));
}

double Rng::normal(double mean, double sigma) {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sigma * z;
}

double expected_rss(double distance_m, const PathLossModel& model) {
  if (!(distance_m > 0.0)) throw NonpositiveDistance("distance must be > 0 m");
  return model.rss_at_1m_dbm - 10.0 * model.exponent_n * std::log10(distance_m);
}

std::optional<int> sample_adv(double expected_dbm, bool occluded, const ChannelModel& channel,
                              Rng& rng) {
  // Fixed draw order keeps the stream aligned regardless of outcome.
  const bool lost = rng.bernoulli(channel.packet_loss_rate);
  const double shadow = rng.normal(0.0, channel.path_loss.shadowing_sigma_db);
  if (lost) return std::nullopt;
  double level = expected_dbm + shadow;
  if (occluded) level -= channel.occlusion.dip_attenuation_db;
  const int rss = std::clamp(static_cast<int>(std::lround(level)), kMinDbm, kMaxDbm);
  if (rss < channel.receiver_sensitivity_dbm) return std::nullopt;
  return rss;
}

namespace {

enum Stream : std::uint32_t { kJitter = 1, kChannel = 2, kOcclusion = 3, kFrames = 4, kScript = 5 };

// Dip episodes: each advertisement outside a dip starts one with the
// configured probability, lasting a uniform duration.
class OcclusionProcess {
 public:
  bool occluded_at(Millis t, const OcclusionModel& model, Rng& rng) {
    if (t < dip_until_) return true;
    if (model.dip_probability_per_adv > 0.0 && rng.bernoulli(model.dip_probability_per_adv)) {
      dip_until_ = t + rng.uniform_int(model.dip_min_duration_ms, model.dip_max_duration_ms);
      return true;
    }
    return false;
  }
  void reset() { dip_until_ = -1; }

 private:
  Millis dip_until_ = -1;
};

Millis jittered(Millis nominal, Millis jitter, Rng& rng) {
  return jitter > 0 ? nominal + rng.uniform_int(-jitter, jitter) : nominal;
}

}  // namespace

EventTrace generate_recede_scenario(const ScenarioConfig& config, const ChannelModel& channel,
                                    const RecedeParams& params) {
  config.validate();
  channel.validate();
  if (!(params.speed_m_per_s > 0.0)) throw std::invalid_argument("speed must be > 0");
  if (!(params.start_m > 0.0)) throw std::invalid_argument("start_m must be > 0");
  const std::size_t n_beacons = config.tx_power_dbm.size();
  if (n_beacons > static_cast<std::size_t>(BeaconIdentity::kMaxPersons)) {
    throw std::invalid_argument("recede scenario supports at most 4 beacons");
  }

  Rng jitter_rng(config.rng_seed, kJitter);
  Rng channel_rng(config.rng_seed, kChannel);
  Rng occlusion_rng(config.rng_seed, kOcclusion);
  std::vector<OcclusionProcess> occlusion(n_beacons);

  std::vector<AdvEvent> advs;
  for (Millis nominal = config.jitter_ms; nominal <= config.duration_ms;
       nominal += config.adv_interval_ms) {
    for (std::size_t b = 0; b < n_beacons; ++b) {
      const Millis t = jittered(nominal, config.jitter_ms, jitter_rng);
      const double d = params.start_m + params.speed_m_per_s * static_cast<double>(t) / 1000.0;
      const double expected = expected_rss(d, channel.path_loss) + config.tx_power_of(b);
      const bool occ = occlusion[b].occluded_at(t, channel.occlusion, occlusion_rng);
      if (auto rss = sample_adv(expected, occ, channel, channel_rng)) {
        advs.push_back({t, BeaconIdentity(static_cast<int>(b), Attachment::Wrist), *rss});
      }
    }
  }
  return EventTrace::build(std::move(advs), {}, {});
}

std::vector<ScriptedTouch> random_touch_script(const ScenarioConfig& config,
                                               std::span<const int> persons,
                                               const RandomScriptParams& params) {
  if (persons.empty()) throw std::invalid_argument("need at least one person");
  if (params.touch_min_ms <= 0 || params.touch_min_ms > params.touch_max_ms ||
      params.gap_min_ms <= 0 || params.gap_min_ms > params.gap_max_ms) {
    throw std::invalid_argument("script durations must satisfy 0 < min <= max");
  }
  Rng rng(config.rng_seed, kScript);
  std::vector<ScriptedTouch> script;
  Millis t = rng.uniform_int(params.gap_min_ms, params.gap_max_ms);
  while (true) {
    const Millis len = rng.uniform_int(params.touch_min_ms, params.touch_max_ms);
    if (t + len > config.duration_ms) break;
    const auto who = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<Millis>(persons.size()) - 1));
    script.push_back({t, t + len, persons[who]});
    t += len + rng.uniform_int(params.gap_min_ms, params.gap_max_ms);
  }
  return script;
}

EventTrace generate_two_person_game(const ScenarioConfig& config, const ChannelModel& channel,
                                    const GameParams& params) {
  config.validate();
  channel.validate();
  if (params.persons.empty()) throw std::invalid_argument("game needs at least one person");
  for (double d : {params.contact_distance_m, params.ambient_distance_m, params.idle_distance_m}) {
    if (!(d > 0.0)) throw NonpositiveDistance("scenario distances must be > 0 m");
  }
  if (params.approach_lead_ms < 0) throw std::invalid_argument("approach_lead_ms must be >= 0");

  std::vector<GroundTruthTouch> truths;
  for (const auto& s : params.touch_script) {
    if (std::find(params.persons.begin(), params.persons.end(), s.person_id) ==
        params.persons.end()) {
      throw std::invalid_argument("touch script names unknown person " +
                                  std::to_string(s.person_id));
    }
    truths.push_back({s.start_ms, s.end_ms, s.person_id});
  }
  // Validates and sorts the script; overlapping entries raise OverlapError.
  const EventTrace truth_only = EventTrace::build({}, {}, truths);
  const auto script = truth_only.truths();

  // Person touching at t (hand at contact range), counting the approach lead.
  auto toucher_at = [&](Millis t) -> std::optional<int> {
    for (const auto& g : script) {
      if (g.start_ms - params.approach_lead_ms <= t && t < g.end_ms) return g.person_id;
      if (g.start_ms - params.approach_lead_ms > t) break;
    }
    return std::nullopt;
  };

  Rng jitter_rng(config.rng_seed, kJitter);
  Rng channel_rng(config.rng_seed, kChannel);
  Rng occlusion_rng(config.rng_seed, kOcclusion);
  Rng frame_rng(config.rng_seed, kFrames);

  const std::size_t n = params.persons.size();
  std::vector<BeaconIdentity> beacons;
  for (int p : params.persons) beacons.emplace_back(p, Attachment::Wrist);
  std::vector<OcclusionProcess> occlusion(n);

  std::vector<AdvEvent> advs;
  for (Millis base = 0; base <= config.duration_ms; base += config.adv_interval_ms) {
    for (std::size_t b = 0; b < n; ++b) {
      // Beacons are staggered evenly across the interval.
      const Millis nominal = base + config.jitter_ms +
                             static_cast<Millis>(b) * config.adv_interval_ms / static_cast<Millis>(n);
      const Millis t = jittered(nominal, config.jitter_ms, jitter_rng);
      if (t > config.duration_ms) continue;
      const auto toucher = toucher_at(t);
      double distance = params.idle_distance_m;
      bool occluded = false;
      if (toucher && *toucher == params.persons[b]) {
        distance = params.contact_distance_m;
        occluded = occlusion[b].occluded_at(t, channel.occlusion, occlusion_rng);
      } else {
        if (toucher) distance = params.ambient_distance_m;
        occlusion[b].reset();
      }
      const double expected = expected_rss(distance, channel.path_loss) + config.tx_power_of(b);
      if (auto rss = sample_adv(expected, occluded, channel, channel_rng)) {
        advs.push_back({t, beacons[b], *rss});
      }
    }
  }

  std::vector<RobotFrame> frames;
  std::size_t g = 0;
  std::array<bool, 4> pressed{};
  std::size_t pressed_for = SIZE_MAX;
  for (Millis t = 0; t <= config.duration_ms; t += config.frame_interval_ms) {
    const bool dropped = frame_rng.bernoulli(config.frame_drop_rate);
    while (g < script.size() && script[g].end_ms <= t) ++g;
    RobotFrame f{t, {}};
    if (g < script.size() && script[g].contains(t)) {
      if (pressed_for != g) {
        // Each touch presses one sensor, sometimes a neighbouring second one.
        pressed = {};
        const auto first = static_cast<std::size_t>(frame_rng.uniform_int(0, 3));
        pressed[first] = true;
        if (frame_rng.bernoulli(0.3)) pressed[(first + 1) % 4] = true;
        pressed_for = g;
      }
      f.touch_sensors = pressed;
    }
    if (!dropped) frames.push_back(f);
  }
  return EventTrace::build(std::move(advs), std::move(frames), std::move(truths));
}

}  // namespace blehri
