#pragma once

// Touch detection from RSS with a fixed threshold, and the frame-count
// evaluation against the robot's capacitive sensors.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "blehri/trace.hpp"

namespace blehri {

inline constexpr Millis kDefaultVicinityMs = 400;
inline constexpr Millis kDefaultMergeGapMs = 400;
inline constexpr std::array<int, 3> kDefaultTouchThresholds = {-40, -41, -42};

class EmptyTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TouchReport {
  int threshold_dbm = 0;
  long touch_frames_total = 0;
  long touch_frames_above = 0;
  long notouch_frames_total = 0;
  long notouch_frames_above = 0;
  long notouch_above_within_vicinity = 0;
  Millis vicinity_ms = kDefaultVicinityMs;

  double touch_rate() const {
    return touch_frames_total ? double(touch_frames_above) / double(touch_frames_total) : 0.0;
  }
  double notouch_rate() const {
    return notouch_frames_total ? double(notouch_frames_above) / double(notouch_frames_total) : 0.0;
  }

  friend bool operator==(const TouchReport&, const TouchReport&) = default;
};

struct TouchSequence {
  Millis start_ms = 0;
  Millis end_ms = 0;
  // Indices into EventTrace::frames() of the touching frames.
  std::vector<std::size_t> frame_indices;

  friend bool operator==(const TouchSequence&, const TouchSequence&) = default;
};

// True iff some beacon has a value strictly greater than threshold_dbm.
bool classify_touch_frame(std::span<const std::optional<int>> rss_view, int threshold_dbm);

bool ground_truth_touch(const RobotFrame& frame);

// Last-value-held RSS of every beacon in the trace at t, ordered as trace.beacons().
std::vector<std::optional<int>> raw_rss_view(const EventTrace& trace, Millis t_ms);

std::vector<TouchSequence> extract_touch_sequences(const EventTrace& trace,
                                                   Millis merge_gap_ms = kDefaultMergeGapMs);

// OpenMP kernel: frames are scored in parallel. Throws EmptyTrace if the
// trace has no frames.
std::vector<TouchReport> evaluate_touch(const EventTrace& trace, std::span<const int> thresholds,
                                        Millis vicinity_ms = kDefaultVicinityMs);

// Single-threaded reference with identical results.
std::vector<TouchReport> evaluate_touch_serial(const EventTrace& trace,
                                               std::span<const int> thresholds,
                                               Millis vicinity_ms = kDefaultVicinityMs);

}  // namespace blehri
