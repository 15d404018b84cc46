#pragma once

// Seeded synthetic trace generator: log-distance path loss with Gaussian
// shadowing, additive occlusion dips, advertisement jitter, packet loss and
// a receiver sensitivity floor.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "blehri/trace.hpp"

namespace blehri {

struct PathLossModel {
  double rss_at_1m_dbm = -59.0;
  double exponent_n = 2.0;
  double shadowing_sigma_db = 4.0;

  void validate() const;
};

struct OcclusionModel {
  double dip_probability_per_adv = 0.0;
  double dip_attenuation_db = 15.0;
  Millis dip_min_duration_ms = 100;
  Millis dip_max_duration_ms = 300;

  void validate() const;
};

struct ChannelModel {
  PathLossModel path_loss;
  OcclusionModel occlusion;
  double packet_loss_rate = 0.0;
  // Quantized samples below this level are not received.
  int receiver_sensitivity_dbm = -100;

  void validate() const;
};

struct ScenarioConfig {
  Millis adv_interval_ms = 100;
  Millis jitter_ms = 10;
  Millis frame_interval_ms = 50;
  double frame_drop_rate = 0.0;
  // One entry per beacon, or a single entry shared by all beacons.
  std::vector<int> tx_power_dbm = {0};
  Millis duration_ms = 60'000;
  std::uint64_t rng_seed = 42;

  void validate() const;
  int tx_power_of(std::size_t beacon_index) const;
};

class NonpositiveDistance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Deterministic across standard libraries: mt19937_64 output is fixed by the
// standard, and the derived distributions are computed here.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint32_t stream);

  double uniform();                              // [0, 1)
  Millis uniform_int(Millis lo, Millis hi);      // [lo, hi]
  double normal(double mean, double sigma);      // Box-Muller
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// rss_at_1m_dbm - 10 * n * log10(d). Throws NonpositiveDistance for d <= 0.
double expected_rss(double distance_m, const PathLossModel& model);

// Absent with probability packet_loss_rate or when below the receiver
// sensitivity; otherwise round(expected + N(0, sigma) - dip), clamped to
// [-127, 20].
std::optional<int> sample_adv(double expected_dbm, bool occluded, const ChannelModel& channel,
                              Rng& rng);

struct RecedeParams {
  double speed_m_per_s = 0.05;
  double start_m = 0.05;
};

// One beacon per tx_power_dbm entry (person i, Wrist), all moving away from
// the scanner on a shared schedule: distance(t) = start_m + speed * t.
EventTrace generate_recede_scenario(const ScenarioConfig& config, const ChannelModel& channel,
                                    const RecedeParams& params);

struct ScriptedTouch {
  Millis start_ms = 0;
  Millis end_ms = 0;
  int person_id = 0;
};

struct GameParams {
  std::vector<int> persons = {1, 2};
  double contact_distance_m = 0.05;
  double ambient_distance_m = 1.0;
  double idle_distance_m = 1.5;
  // The toucher's hand reaches contact range this long before the
  // capacitive sensors fire.
  Millis approach_lead_ms = 200;
  std::vector<ScriptedTouch> touch_script;
};

struct RandomScriptParams {
  Millis touch_min_ms = 600;
  Millis touch_max_ms = 2500;
  Millis gap_min_ms = 1500;
  Millis gap_max_ms = 6000;
};

// Alternating-at-random touches filling [gap, duration_ms).
std::vector<ScriptedTouch> random_touch_script(const ScenarioConfig& config,
                                               std::span<const int> persons,
                                               const RandomScriptParams& params);

// Throws OverlapError for overlapping script intervals.
EventTrace generate_two_person_game(const ScenarioConfig& config, const ChannelModel& channel,
                                    const GameParams& params);

}  // namespace blehri
