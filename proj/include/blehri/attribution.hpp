#pragma once

// Who is touching: during a ground-truth touch, the person whose beacon is
// strongest (optionally the max over a trailing window) is the toucher.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "blehri/trace.hpp"

namespace blehri {

inline constexpr std::array<Millis, 3> kDefaultAttributionWindows = {0, 300, 500};

class NoGroundTruth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AttributionRow {
  Millis window_ms = 0;
  long frames_total = 0;
  long frames_correct = 0;
  long frames_false = 0;
  long sequences_total = 0;
  long sequences_correct = 0;
  long sequences_false = 0;

  double frame_accuracy() const {
    return frames_total ? double(frames_correct) / double(frames_total) : 0.0;
  }
  double sequence_accuracy() const {
    return sequences_total ? double(sequences_correct) / double(sequences_total) : 0.0;
  }

  friend bool operator==(const AttributionRow&, const AttributionRow&) = default;
};

using AttributionReport = std::vector<AttributionRow>;

// A person's signal is the strongest windowed_max_rss over all of their
// beacons. Returns the person with the greatest signal, lowest id on ties;
// absent if none of `persons` has been heard by t_ms.
std::optional<int> attribute_frame(const EventTrace& trace, Millis t_ms, Millis window_ms,
                                   std::span<const int> persons);

// Strict majority over all frames of the sequence (unattributed frames count
// toward the total), else the first attributed frame's person. Throws
// EmptySequence if no frame is attributed.
int attribute_sequence(std::span<const std::optional<int>> attributions);

// Every ground-truth interval holding at least one robot frame is one touch
// sequence. OpenMP kernel over frames. Throws NoGroundTruth.
AttributionReport evaluate_attribution(const EventTrace& trace, std::span<const Millis> windows);

// Single-threaded reference with identical results.
AttributionReport evaluate_attribution_serial(const EventTrace& trace,
                                              std::span<const Millis> windows);

}  // namespace blehri
