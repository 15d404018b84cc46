#pragma once

// Time-ordered event stream: advertisements seen by the scanner, robot
// frames and ground-truth touch intervals, all on one millisecond clock.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blehri/ibeacon_codec.hpp"

namespace blehri {

using Millis = std::int64_t;

struct AdvEvent {
  Millis t_ms = 0;
  BeaconIdentity beacon;
  int rss_dbm = 0;

  friend bool operator==(const AdvEvent&, const AdvEvent&) = default;
};

struct RobotFrame {
  Millis t_ms = 0;
  std::array<bool, 4> touch_sensors{};

  friend bool operator==(const RobotFrame&, const RobotFrame&) = default;
};

// Half-open interval [start_ms, end_ms).
struct GroundTruthTouch {
  Millis start_ms = 0;
  Millis end_ms = 0;
  int person_id = 0;

  bool contains(Millis t) const { return start_ms <= t && t < end_ms; }
  friend bool operator==(const GroundTruthTouch&, const GroundTruthTouch&) = default;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after construction. Canonical ordering:
//   advs   by (t_ms, beacon key), stable
//   frames by t_ms, stable
//   truths by start_ms
class EventTrace {
 public:
  EventTrace() = default;

  // Sorts and validates. Throws std::invalid_argument on field range
  // violations and OverlapError on overlapping truths.
  static EventTrace build(std::vector<AdvEvent> advs, std::vector<RobotFrame> frames,
                          std::vector<GroundTruthTouch> truths);

  std::span<const AdvEvent> advs() const { return advs_; }
  std::span<const RobotFrame> frames() const { return frames_; }
  std::span<const GroundTruthTouch> truths() const { return truths_; }

  bool empty() const { return advs_.empty() && frames_.empty() && truths_.empty(); }

  // Distinct beacons that advertised at least once, ascending by key.
  const std::vector<BeaconIdentity>& beacons() const { return beacons_; }
  // Distinct person ids over beacons and truths, ascending.
  std::vector<int> persons() const;

  // Latest timestamp of any record (truth end included); 0 for an empty trace.
  Millis end_ms() const;

  // Advertisements of one beacon, ascending in time.
  std::span<const AdvEvent> advs_of(BeaconIdentity beacon) const;

  // Ground-truth interval containing t, if any.
  const GroundTruthTouch* truth_at(Millis t) const;

  friend bool operator==(const EventTrace& a, const EventTrace& b) {
    return a.advs_ == b.advs_ && a.frames_ == b.frames_ && a.truths_ == b.truths_;
  }

 private:
  std::vector<AdvEvent> advs_;
  std::vector<RobotFrame> frames_;
  std::vector<GroundTruthTouch> truths_;

  // Per-beacon copies of advs_, indexed by BeaconIdentity::key().
  std::array<std::vector<AdvEvent>, 16> by_beacon_;
  std::vector<BeaconIdentity> beacons_;
};

// Throws SchemaError (with 1-based line number) or OverlapError.
EventTrace parse_trace(std::span<const std::string> lines);
EventTrace parse_trace(const std::string& text);

std::vector<std::string> serialize_trace(const EventTrace& trace);
std::string serialize_trace_text(const EventTrace& trace);

// Max RSS of `beacon` over advertisements in (t_ms - window_ms, t_ms].
// window_ms == 0 or an empty window falls back to the latest sample at or
// before t_ms. Absent if the beacon has not advertised by t_ms.
std::optional<int> windowed_max_rss(const EventTrace& trace, Millis t_ms, Millis window_ms,
                                    BeaconIdentity beacon);

}  // namespace blehri
