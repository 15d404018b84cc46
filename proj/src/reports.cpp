#include "blehri/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace blehri {

namespace {

std::string percent(long num, long den) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", den ? 100.0 * double(num) / double(den) : 0.0);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string touch_report_csv(std::span<const TouchReport> reports) {
  std::string out = "threshold_dbm,touch_total,touch_above,notouch_total,notouch_above,notouch_above_vicinity\n";
  for (const auto& r : reports) {
    out += std::to_string(r.threshold_dbm) + "," + std::to_string(r.touch_frames_total) + "," +
           std::to_string(r.touch_frames_above) + "," + std::to_string(r.notouch_frames_total) + "," +
           std::to_string(r.notouch_frames_above) + "," +
           std::to_string(r.notouch_above_within_vicinity) + "\n";
  }
  return out;
}

std::string render_touch_table(std::span<const TouchReport> reports) {
  std::string out;
  const long touch_total = reports.empty() ? 0 : reports.front().touch_frames_total;
  const long notouch_total = reports.empty() ? 0 : reports.front().notouch_frames_total;
  const Millis vicinity = reports.empty() ? kDefaultVicinityMs : reports.front().vicinity_ms;
  out += "RSS value      | Touch occurs       | No touch occurs    | of which within +-" +
         std::to_string(vicinity) + " ms\n";
  out += "greater than:  | Total: " + pad(std::to_string(touch_total), 11) + " | Total: " +
         pad(std::to_string(notouch_total), 11) + " |\n";
  out += "---------------+--------------------+--------------------+-----------------------\n";
  for (const auto& r : reports) {
    out += pad(std::to_string(r.threshold_dbm) + " dBm", 14) + " | " +
           pad(std::to_string(r.touch_frames_above) + " (" +
                   percent(r.touch_frames_above, r.touch_frames_total) + ")",
               18) +
           " | " +
           pad(std::to_string(r.notouch_frames_above) + " (" +
                   percent(r.notouch_frames_above, r.notouch_frames_total) + ")",
               18) +
           " | " + pad(std::to_string(r.notouch_above_within_vicinity), 10) + "\n";
  }
  return out;
}

std::string attribution_report_csv(const AttributionReport& report) {
  std::string out = "window_ms,frames_total,frames_correct,frames_false,seq_total,seq_correct,seq_false\n";
  for (const auto& r : report) {
    out += std::to_string(r.window_ms) + "," + std::to_string(r.frames_total) + "," +
           std::to_string(r.frames_correct) + "," + std::to_string(r.frames_false) + "," +
           std::to_string(r.sequences_total) + "," + std::to_string(r.sequences_correct) + "," +
           std::to_string(r.sequences_false) + "\n";
  }
  return out;
}

std::string render_attribution_table(const AttributionReport& report) {
  const long frames = report.empty() ? 0 : report.front().frames_total;
  const long seqs = report.empty() ? 0 : report.front().sequences_total;
  std::string out;
  out += "         ||     Received frames     ||     Touch sequences\n";
  out += "         ||  Total: " + pad(std::to_string(frames), 14) + "  ||  Total: " +
         pad(std::to_string(seqs), 10) + "\n";
  out += "  window ||   correct  |    false   ||  correct  |   false\n";
  out += "---------++------------+------------++-----------+----------\n";
  for (const auto& r : report) {
    auto cell = [](long n, long d, std::size_t w) {
      return pad(std::to_string(n) + " (" + percent(n, d) + ")", w);
    };
    out += pad(std::to_string(r.window_ms) + " ms", 8) + " || " +
           cell(r.frames_correct, r.frames_total, 10) + " | " +
           cell(r.frames_false, r.frames_total, 10) + " || " +
           cell(r.sequences_correct, r.sequences_total, 9) + " | " +
           cell(r.sequences_false, r.sequences_total, 8) + "\n";
  }
  return out;
}

std::string zone_timeline_text(const ZoneTimeline& timeline) {
  std::string out;
  for (const auto& line : timeline.to_lines()) out += line + "\n";
  return out;
}

std::string render_zone_summary(const ZoneTimeline& timeline) {
  std::string out = "beacon    transitions   Close(ms)  InRoom(ms)     Out(ms)\n";
  for (auto b : timeline.beacons()) {
    out += pad(b.label(), 8) + pad(std::to_string(timeline.transitions_of(b).size()), 13) +
           pad(std::to_string(timeline.time_in(b, ProximityZone::Close)), 12) +
           pad(std::to_string(timeline.time_in(b, ProximityZone::InRoom)), 12) +
           pad(std::to_string(timeline.time_in(b, ProximityZone::Out)), 12) + "\n";
  }
  return out;
}

std::string plot_data_csv(const EventTrace& trace) {
  const auto& beacons = trace.beacons();
  const bool with_truth = !trace.truths().empty();

  std::string out = "t_ms,touch";
  for (auto b : beacons) out += "," + b.label();
  if (with_truth) out += ",truth_person";
  out += "\n";

  std::set<Millis> times;
  for (const auto& a : trace.advs()) times.insert(a.t_ms);
  for (const auto& f : trace.frames()) times.insert(f.t_ms);

  const auto frames = trace.frames();
  std::size_t next_frame = 0;
  bool touching = false;
  for (Millis t : times) {
    while (next_frame < frames.size() && frames[next_frame].t_ms <= t) {
      touching = ground_truth_touch(frames[next_frame++]);
    }
    out += std::to_string(t) + (touching ? ",1" : ",0");
    for (auto b : beacons) {
      out += ",";
      if (auto v = windowed_max_rss(trace, t, 0, b)) out += std::to_string(*v);
    }
    if (with_truth) {
      out += ",";
      if (const auto* g = trace.truth_at(t)) out += std::to_string(g->person_id);
    }
    out += "\n";
  }
  return out;
}

}  // namespace blehri
