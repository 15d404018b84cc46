#include "blehri/trace.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <string_view>
#include <tuple>

namespace blehri {

EventTrace EventTrace::build(std::vector<AdvEvent> advs, std::vector<RobotFrame> frames,
                             std::vector<GroundTruthTouch> truths) {
  for (const auto& a : advs) {
    if (a.t_ms < 0) throw std::invalid_argument("adv with negative timestamp");
    if (a.rss_dbm < kMinDbm || a.rss_dbm > kMaxDbm) {
      throw std::invalid_argument("adv rss out of range: " + std::to_string(a.rss_dbm));
    }
  }
  for (const auto& f : frames) {
    if (f.t_ms < 0) throw std::invalid_argument("frame with negative timestamp");
  }
  for (const auto& g : truths) {
    if (g.start_ms < 0 || g.start_ms >= g.end_ms) {
      throw std::invalid_argument("truth interval must satisfy 0 <= start < end");
    }
    if (g.person_id < 0 || g.person_id >= BeaconIdentity::kMaxPersons) {
      throw std::invalid_argument("truth person_id out of range: " + std::to_string(g.person_id));
    }
  }

  std::stable_sort(advs.begin(), advs.end(), [](const AdvEvent& a, const AdvEvent& b) {
    return std::tuple(a.t_ms, a.beacon.key()) < std::tuple(b.t_ms, b.beacon.key());
  });
  std::stable_sort(frames.begin(), frames.end(),
                   [](const RobotFrame& a, const RobotFrame& b) { return a.t_ms < b.t_ms; });
  std::stable_sort(truths.begin(), truths.end(), [](const auto& a, const auto& b) {
    return a.start_ms < b.start_ms;
  });
  for (std::size_t i = 1; i < truths.size(); ++i) {
    if (truths[i].start_ms < truths[i - 1].end_ms) {
      throw OverlapError("ground-truth intervals overlap: [" +
                         std::to_string(truths[i - 1].start_ms) + ", " +
                         std::to_string(truths[i - 1].end_ms) + ") and [" +
                         std::to_string(truths[i].start_ms) + ", " +
                         std::to_string(truths[i].end_ms) + ")");
    }
  }

  EventTrace t;
  t.advs_ = std::move(advs);
  t.frames_ = std::move(frames);
  t.truths_ = std::move(truths);
  for (const auto& a : t.advs_) t.by_beacon_[a.beacon.key()].push_back(a);
  for (int k = 0; k < 16; ++k) {
    if (!t.by_beacon_[k].empty()) t.beacons_.push_back(unpack_identity(static_cast<std::uint8_t>(k)));
  }
  return t;
}

std::vector<int> EventTrace::persons() const {
  std::set<int> ids;
  for (auto b : beacons_) ids.insert(b.person_id());
  for (const auto& g : truths_) ids.insert(g.person_id);
  return {ids.begin(), ids.end()};
}

Millis EventTrace::end_ms() const {
  Millis end = 0;
  if (!advs_.empty()) end = std::max(end, advs_.back().t_ms);
  if (!frames_.empty()) end = std::max(end, frames_.back().t_ms);
  if (!truths_.empty()) end = std::max(end, truths_.back().end_ms);
  return end;
}

std::span<const AdvEvent> EventTrace::advs_of(BeaconIdentity beacon) const {
  return by_beacon_[beacon.key()];
}

const GroundTruthTouch* EventTrace::truth_at(Millis t) const {
  auto it = std::upper_bound(truths_.begin(), truths_.end(), t,
                             [](Millis v, const GroundTruthTouch& g) { return v < g.start_ms; });
  if (it == truths_.begin()) return nullptr;
  --it;
  return it->contains(t) ? &*it : nullptr;
}

std::optional<int> windowed_max_rss(const EventTrace& trace, Millis t_ms, Millis window_ms,
                                    BeaconIdentity beacon) {
  if (window_ms < 0) throw std::invalid_argument("window_ms must be >= 0");
  const auto samples = trace.advs_of(beacon);
  auto hi = std::upper_bound(samples.begin(), samples.end(), t_ms,
                             [](Millis v, const AdvEvent& a) { return v < a.t_ms; });
  if (hi == samples.begin()) return std::nullopt;
  if (window_ms > 0) {
    auto lo = std::upper_bound(samples.begin(), hi, t_ms - window_ms,
                               [](Millis v, const AdvEvent& a) { return v < a.t_ms; });
    if (lo != hi) {
      return std::max_element(lo, hi, [](const AdvEvent& a, const AdvEvent& b) {
               return a.rss_dbm < b.rss_dbm;
             })->rss_dbm;
    }
  }
  return std::prev(hi)->rss_dbm;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line, const char* field) {
  Int v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw SchemaError(line, std::string("invalid ") + field + " '" + std::string(tok) + "'");
  }
  return v;
}

BeaconIdentity parse_beacon(std::string_view tok, std::size_t line) {
  auto dash = tok.find('-');
  if (dash == std::string_view::npos || dash == 0) {
    throw SchemaError(line, "beacon must be <person_id>-<attachment>, got '" + std::string(tok) + "'");
  }
  int person = parse_int<int>(tok.substr(0, dash), line, "person_id");
  if (person < 0 || person >= BeaconIdentity::kMaxPersons) {
    throw SchemaError(line, "person_id out of range [0, 3]: " + std::to_string(person));
  }
  Attachment att{};
  if (!parse_attachment(tok.substr(dash + 1), att)) {
    throw SchemaError(line, "unknown attachment '" + std::string(tok.substr(dash + 1)) + "'");
  }
  return BeaconIdentity(person, att);
}

}  // namespace

EventTrace parse_trace(std::span<const std::string> lines) {
  std::vector<AdvEvent> advs;
  std::vector<RobotFrame> frames;
  std::vector<GroundTruthTouch> truths;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "adv") {
      if (tok.size() != 4) throw SchemaError(lineno, "adv expects 3 fields");
      AdvEvent a;
      a.t_ms = parse_int<Millis>(tok[1], lineno, "t_ms");
      a.beacon = parse_beacon(tok[2], lineno);
      a.rss_dbm = parse_int<int>(tok[3], lineno, "rss_dbm");
      if (a.t_ms < 0) throw SchemaError(lineno, "t_ms must be >= 0");
      if (a.rss_dbm < kMinDbm || a.rss_dbm > kMaxDbm) {
        throw SchemaError(lineno, "rss_dbm out of range [-127, 20]");
      }
      advs.push_back(a);
    } else if (tok[0] == "frame") {
      if (tok.size() != 3) throw SchemaError(lineno, "frame expects 2 fields");
      RobotFrame f;
      f.t_ms = parse_int<Millis>(tok[1], lineno, "t_ms");
      if (f.t_ms < 0) throw SchemaError(lineno, "t_ms must be >= 0");
      if (tok[2].size() != 4) throw SchemaError(lineno, "frame needs exactly 4 sensor flags");
      for (std::size_t s = 0; s < 4; ++s) {
        char c = tok[2][s];
        if (c != '0' && c != '1') throw SchemaError(lineno, "sensor flag must be 0 or 1");
        f.touch_sensors[s] = (c == '1');
      }
      frames.push_back(f);
    } else if (tok[0] == "truth") {
      if (tok.size() != 4) throw SchemaError(lineno, "truth expects 3 fields");
      GroundTruthTouch g;
      g.start_ms = parse_int<Millis>(tok[1], lineno, "start_ms");
      g.end_ms = parse_int<Millis>(tok[2], lineno, "end_ms");
      g.person_id = parse_int<int>(tok[3], lineno, "person_id");
      if (g.start_ms < 0 || g.start_ms >= g.end_ms) {
        throw SchemaError(lineno, "truth needs 0 <= start_ms < end_ms");
      }
      if (g.person_id < 0 || g.person_id >= BeaconIdentity::kMaxPersons) {
        throw SchemaError(lineno, "person_id out of range [0, 3]");
      }
      truths.push_back(g);
    } else {
      throw SchemaError(lineno, "unknown record kind '" + std::string(tok[0]) + "'");
    }
  }
  return EventTrace::build(std::move(advs), std::move(frames), std::move(truths));
}

EventTrace parse_trace(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return parse_trace(lines);
}

std::vector<std::string> serialize_trace(const EventTrace& trace) {
  // Merge the three canonical lists by (time, kind, beacon).
  std::vector<std::string> out;
  out.reserve(trace.advs().size() + trace.frames().size() + trace.truths().size());
  auto advs = trace.advs();
  auto frames = trace.frames();
  auto truths = trace.truths();
  std::size_t a = 0, f = 0, g = 0;
  constexpr Millis kNone = INT64_MAX;
  while (a < advs.size() || f < frames.size() || g < truths.size()) {
    Millis ta = a < advs.size() ? advs[a].t_ms : kNone;
    Millis tf = f < frames.size() ? frames[f].t_ms : kNone;
    Millis tg = g < truths.size() ? truths[g].start_ms : kNone;
    if (ta <= tf && ta <= tg) {
      const auto& e = advs[a++];
      out.push_back("adv " + std::to_string(e.t_ms) + " " + e.beacon.label() + " " +
                    std::to_string(e.rss_dbm));
    } else if (tf <= tg) {
      const auto& e = frames[f++];
      std::string s = "frame " + std::to_string(e.t_ms) + " ";
      for (bool b : e.touch_sensors) s.push_back(b ? '1' : '0');
      out.push_back(std::move(s));
    } else {
      const auto& e = truths[g++];
      out.push_back("truth " + std::to_string(e.start_ms) + " " + std::to_string(e.end_ms) + " " +
                    std::to_string(e.person_id));
    }
  }
  return out;
}

std::string serialize_trace_text(const EventTrace& trace) {
  std::string text;
  for (const auto& line : serialize_trace(trace)) {
    text += line;
    text += '\n';
  }
  return text;
}

}  // namespace blehri
