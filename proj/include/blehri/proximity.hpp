#pragma once

// Presence/proximity state machine. Each beacon is Out until it is heard;
// any advertisement puts it InRoom or Close depending on RSS, and silence
// for presence_timeout_ms puts it back Out.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blehri/trace.hpp"

namespace blehri {

enum class ProximityZone { Close, InRoom, Out };

std::string_view to_string(ProximityZone z);

struct ProximityConfig {
  int close_threshold_dbm = -60;
  Millis presence_timeout_ms = 2000;
  // Extra margin below the threshold a Close beacon may drop before
  // falling back to InRoom. 0 means a plain threshold.
  int hysteresis_db = 0;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;

  // "Close" as roughly within 10 cm of the scanner.
  static ProximityConfig contact_preset() { return {}; }
  // "Close" as roughly within 50 cm of the scanner.
  static ProximityConfig half_metre_preset() {
    ProximityConfig c;
    c.close_threshold_dbm = -70;
    return c;
  }
};

// Close iff rss_dbm >= close_threshold_dbm.
ProximityZone classify_zone(int rss_dbm, const ProximityConfig& config);

class TimeRegression : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZoneChange {
  Millis t_ms = 0;
  BeaconIdentity beacon;
  ProximityZone zone = ProximityZone::Out;

  friend bool operator==(const ZoneChange&, const ZoneChange&) = default;
};

class ProximityTracker {
 public:
  explicit ProximityTracker(ProximityConfig config);

  // Both return the zone changes caused by the event (possibly none).
  // Throws TimeRegression if t is older than the last processed event.
  std::vector<ZoneChange> on_advertisement(const AdvEvent& adv);
  std::vector<ZoneChange> on_tick(Millis now_ms);

  ProximityZone zone(BeaconIdentity beacon) const;
  std::optional<Millis> last_advertisement(BeaconIdentity beacon) const;
  std::optional<Millis> now() const { return now_; }
  const ProximityConfig& config() const { return config_; }

 private:
  struct Track {
    std::optional<Millis> last_adv_ms;
    ProximityZone zone = ProximityZone::Out;
  };

  void advance_clock(Millis t);

  ProximityConfig config_;
  std::optional<Millis> now_;
  std::array<Track, 16> tracks_{};
};

// Piecewise-constant zone history per beacon over [0, horizon_ms].
class ZoneTimeline {
 public:
  ZoneTimeline(std::vector<BeaconIdentity> beacons, Millis horizon_ms,
               std::vector<ZoneChange> changes);

  const std::vector<BeaconIdentity>& beacons() const { return beacons_; }
  Millis horizon_ms() const { return horizon_ms_; }
  // All transitions, ordered by (time, beacon key).
  const std::vector<ZoneChange>& changes() const { return changes_; }
  std::vector<ZoneChange> changes_of(BeaconIdentity beacon) const;
  // Changes after t = 0; a change at 0 sets the initial zone.
  std::vector<ZoneChange> transitions_of(BeaconIdentity beacon) const;

  ProximityZone zone_at(BeaconIdentity beacon, Millis t) const;
  // Total time within [0, horizon_ms) spent in `zone`.
  Millis time_in(BeaconIdentity beacon, ProximityZone zone) const;

  // One "zone <t_ms> <person>-<attachment> <Zone>" line per transition.
  std::vector<std::string> to_lines() const;

 private:
  std::vector<BeaconIdentity> beacons_;
  Millis horizon_ms_;
  std::vector<ZoneChange> changes_;
};

struct ProximityRunOptions {
  Millis tick_ms = 50;
  // Defaults to trace.end_ms() + presence_timeout_ms so that trailing
  // Out transitions are observed.
  std::optional<Millis> horizon_ms;
  // Defaults to every beacon in the trace.
  std::optional<std::vector<BeaconIdentity>> beacons;
};

// Replays the trace through a ProximityTracker. Advertisements and synthetic
// ticks at 0, tick_ms, 2*tick_ms, ... <= horizon are merged in time order,
// advertisements first on equal timestamps.
ZoneTimeline run_proximity(const EventTrace& trace, const ProximityConfig& config,
                           const ProximityRunOptions& options = {});

}  // namespace blehri
