#include "blehri/proximity.hpp"

#include <algorithm>
#include <tuple>

namespace blehri {

std::string_view to_string(ProximityZone z) {
  switch (z) {
    case ProximityZone::Close: return "Close";
    case ProximityZone::InRoom: return "InRoom";
    case ProximityZone::Out: return "Out";
  }
  return "?";
}

void ProximityConfig::validate() const {
  if (close_threshold_dbm < kMinDbm || close_threshold_dbm > kMaxDbm) {
    throw std::invalid_argument("close_threshold_dbm out of range [-127, 20]");
  }
  if (presence_timeout_ms <= 0) throw std::invalid_argument("presence_timeout_ms must be > 0");
  if (hysteresis_db < 0) throw std::invalid_argument("hysteresis_db must be >= 0");
}

ProximityZone classify_zone(int rss_dbm, const ProximityConfig& config) {
  return rss_dbm >= config.close_threshold_dbm ? ProximityZone::Close : ProximityZone::InRoom;
}

ProximityTracker::ProximityTracker(ProximityConfig config) : config_(config) {
  config_.validate();
}

void ProximityTracker::advance_clock(Millis t) {
  if (now_ && t < *now_) {
    throw TimeRegression("event at " + std::to_string(t) + " ms precedes last processed " +
                         std::to_string(*now_) + " ms");
  }
  now_ = t;
}

std::vector<ZoneChange> ProximityTracker::on_advertisement(const AdvEvent& adv) {
  advance_clock(adv.t_ms);
  Track& tr = tracks_[adv.beacon.key()];
  tr.last_adv_ms = adv.t_ms;

  ProximityZone next = classify_zone(adv.rss_dbm, config_);
  if (tr.zone == ProximityZone::Close && next == ProximityZone::InRoom &&
      adv.rss_dbm >= config_.close_threshold_dbm - config_.hysteresis_db) {
    next = ProximityZone::Close;
  }
  if (next == tr.zone) return {};
  tr.zone = next;
  return {ZoneChange{adv.t_ms, adv.beacon, next}};
}

std::vector<ZoneChange> ProximityTracker::on_tick(Millis now_ms) {
  advance_clock(now_ms);
  std::vector<ZoneChange> changes;
  for (int k = 0; k < 16; ++k) {
    Track& tr = tracks_[k];
    if (tr.zone == ProximityZone::Out || !tr.last_adv_ms) continue;
    if (now_ms - *tr.last_adv_ms >= config_.presence_timeout_ms) {
      tr.zone = ProximityZone::Out;
      changes.push_back({now_ms, unpack_identity(static_cast<std::uint8_t>(k)), ProximityZone::Out});
    }
  }
  return changes;
}

ProximityZone ProximityTracker::zone(BeaconIdentity beacon) const {
  return tracks_[beacon.key()].zone;
}

std::optional<Millis> ProximityTracker::last_advertisement(BeaconIdentity beacon) const {
  return tracks_[beacon.key()].last_adv_ms;
}

ZoneTimeline::ZoneTimeline(std::vector<BeaconIdentity> beacons, Millis horizon_ms,
                           std::vector<ZoneChange> changes)
    : beacons_(std::move(beacons)), horizon_ms_(horizon_ms), changes_(std::move(changes)) {
  std::stable_sort(changes_.begin(), changes_.end(), [](const ZoneChange& a, const ZoneChange& b) {
    return std::tuple(a.t_ms, a.beacon.key()) < std::tuple(b.t_ms, b.beacon.key());
  });
}

std::vector<ZoneChange> ZoneTimeline::changes_of(BeaconIdentity beacon) const {
  std::vector<ZoneChange> out;
  for (const auto& c : changes_) {
    if (c.beacon == beacon) out.push_back(c);
  }
  return out;
}

std::vector<ZoneChange> ZoneTimeline::transitions_of(BeaconIdentity beacon) const {
  std::vector<ZoneChange> out;
  for (const auto& c : changes_) {
    if (c.beacon == beacon && c.t_ms > 0) out.push_back(c);
  }
  return out;
}

ProximityZone ZoneTimeline::zone_at(BeaconIdentity beacon, Millis t) const {
  ProximityZone z = ProximityZone::Out;
  for (const auto& c : changes_) {
    if (c.t_ms > t) break;
    if (c.beacon == beacon) z = c.zone;
  }
  return z;
}

Millis ZoneTimeline::time_in(BeaconIdentity beacon, ProximityZone zone) const {
  Millis total = 0;
  Millis since = 0;
  ProximityZone current = ProximityZone::Out;
  for (const auto& c : changes_) {
    if (c.beacon != beacon) continue;
    if (c.t_ms >= horizon_ms_) break;
    if (current == zone) total += c.t_ms - since;
    since = c.t_ms;
    current = c.zone;
  }
  if (current == zone) total += horizon_ms_ - since;
  return total;
}

std::vector<std::string> ZoneTimeline::to_lines() const {
  std::vector<std::string> lines;
  lines.reserve(changes_.size());
  for (const auto& c : changes_) {
    lines.push_back("zone " + std::to_string(c.t_ms) + " " + c.beacon.label() + " " +
                    std::string(to_string(c.zone)));
  }
  return lines;
}

ZoneTimeline run_proximity(const EventTrace& trace, const ProximityConfig& config,
                           const ProximityRunOptions& options) {
  if (options.tick_ms <= 0) throw std::invalid_argument("tick_ms must be > 0");
  const Millis horizon = options.horizon_ms.value_or(trace.end_ms() + config.presence_timeout_ms);
  std::vector<BeaconIdentity> beacons = options.beacons.value_or(trace.beacons());
  std::array<bool, 16> tracked{};
  for (auto b : beacons) tracked[b.key()] = true;

  ProximityTracker tracker(config);
  std::vector<ZoneChange> changes;
  auto append = [&](std::vector<ZoneChange> cs) {
    for (auto& c : cs) {
      if (tracked[c.beacon.key()]) changes.push_back(c);
    }
  };

  auto advs = trace.advs();
  std::size_t next_adv = 0;
  for (Millis tick = 0; tick <= horizon; tick += options.tick_ms) {
    while (next_adv < advs.size() && advs[next_adv].t_ms <= tick) {
      append(tracker.on_advertisement(advs[next_adv++]));
    }
    append(tracker.on_tick(tick));
  }
  while (next_adv < advs.size() && advs[next_adv].t_ms <= horizon) {
    append(tracker.on_advertisement(advs[next_adv++]));
  }
  return ZoneTimeline(std::move(beacons), horizon, std::move(changes));
}

}  // namespace blehri
