#include "blehri/touch.hpp"

#include <algorithm>
#include <limits>

namespace blehri {

bool classify_touch_frame(std::span<const std::optional<int>> rss_view, int threshold_dbm) {
  return std::any_of(rss_view.begin(), rss_view.end(),
                     [&](const std::optional<int>& v) { return v && *v > threshold_dbm; });
}

bool ground_truth_touch(const RobotFrame& frame) {
  return std::any_of(frame.touch_sensors.begin(), frame.touch_sensors.end(),
                     [](bool s) { return s; });
}

std::vector<std::optional<int>> raw_rss_view(const EventTrace& trace, Millis t_ms) {
  std::vector<std::optional<int>> view;
  view.reserve(trace.beacons().size());
  for (auto b : trace.beacons()) view.push_back(windowed_max_rss(trace, t_ms, 0, b));
  return view;
}

std::vector<TouchSequence> extract_touch_sequences(const EventTrace& trace, Millis merge_gap_ms) {
  if (merge_gap_ms < 0) throw std::invalid_argument("merge_gap_ms must be >= 0");
  std::vector<TouchSequence> out;
  const auto frames = trace.frames();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!ground_truth_touch(frames[i])) continue;
    if (out.empty() || frames[i].t_ms - out.back().end_ms > merge_gap_ms) {
      out.push_back({frames[i].t_ms, frames[i].t_ms, {}});
    }
    out.back().end_ms = frames[i].t_ms;
    out.back().frame_indices.push_back(i);
  }
  return out;
}

namespace {

constexpr Millis kFar = std::numeric_limits<Millis>::max();

// Distance from each frame to the nearest touching frame (kFar if none).
std::vector<Millis> distance_to_touch(std::span<const RobotFrame> frames) {
  std::vector<Millis> dist(frames.size(), kFar);
  Millis last = kFar;
  bool seen = false;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (ground_truth_touch(frames[i])) {
      last = frames[i].t_ms;
      seen = true;
    }
    if (seen) dist[i] = frames[i].t_ms - last;
  }
  seen = false;
  for (std::size_t i = frames.size(); i-- > 0;) {
    if (ground_truth_touch(frames[i])) {
      last = frames[i].t_ms;
      seen = true;
    }
    if (seen) dist[i] = std::min(dist[i], last - frames[i].t_ms);
  }
  return dist;
}

void check_inputs(const EventTrace& trace, Millis vicinity_ms) {
  if (trace.frames().empty()) throw EmptyTrace("trace has no robot frames");
  if (vicinity_ms < 0) throw std::invalid_argument("vicinity_ms must be >= 0");
}

}  // namespace

std::vector<TouchReport> evaluate_touch(const EventTrace& trace, std::span<const int> thresholds,
                                        Millis vicinity_ms) {
  check_inputs(trace, vicinity_ms);
  const auto frames = trace.frames();
  const long n = static_cast<long>(frames.size());
  const auto& beacons = trace.beacons();

  // Strongest last-held RSS per frame; "any beacon above" == "max above".
  constexpr int kNoSignal = std::numeric_limits<int>::min();
  std::vector<int> strongest(frames.size(), kNoSignal);
  std::vector<char> touching(frames.size(), 0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    int best = kNoSignal;
    for (auto b : beacons) {
      if (auto v = windowed_max_rss(trace, frames[i].t_ms, 0, b)) best = std::max(best, *v);
    }
    strongest[i] = best;
    touching[i] = ground_truth_touch(frames[i]) ? 1 : 0;
  }
  const std::vector<Millis> dist = distance_to_touch(frames);

  std::vector<TouchReport> reports(thresholds.size());
  const long nt = static_cast<long>(thresholds.size());
  for (long k = 0; k < nt; ++k) {
    const int thr = thresholds[k];
    long t_total = 0, t_above = 0, n_total = 0, n_above = 0, n_near = 0;
#pragma omp parallel for schedule(static) reduction(+ : t_total, t_above, n_total, n_above, n_near)
    for (long i = 0; i < n; ++i) {
      const bool above = strongest[i] != kNoSignal && strongest[i] > thr;
      if (touching[i]) {
        ++t_total;
        t_above += above;
      } else {
        ++n_total;
        if (above) {
          ++n_above;
          n_near += dist[i] <= vicinity_ms;
        }
      }
    }
    reports[k] = {thr, t_total, t_above, n_total, n_above, n_near, vicinity_ms};
  }
  return reports;
}

std::vector<TouchReport> evaluate_touch_serial(const EventTrace& trace,
                                               std::span<const int> thresholds,
                                               Millis vicinity_ms) {
  check_inputs(trace, vicinity_ms);
  const auto frames = trace.frames();
  const std::vector<Millis> dist = distance_to_touch(frames);

  std::vector<std::vector<std::optional<int>>> views;
  views.reserve(frames.size());
  for (const auto& f : frames) views.push_back(raw_rss_view(trace, f.t_ms));

  std::vector<TouchReport> reports;
  for (int thr : thresholds) {
    TouchReport r;
    r.threshold_dbm = thr;
    r.vicinity_ms = vicinity_ms;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const bool above = classify_touch_frame(views[i], thr);
      if (ground_truth_touch(frames[i])) {
        ++r.touch_frames_total;
        if (above) ++r.touch_frames_above;
      } else {
        ++r.notouch_frames_total;
        if (above) {
          ++r.notouch_frames_above;
          if (dist[i] <= vicinity_ms) ++r.notouch_above_within_vicinity;
        }
      }
    }
    reports.push_back(r);
  }
  return reports;
}

}  // namespace blehri
