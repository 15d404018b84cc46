#pragma once

#include <span>
#include <string>

#include "blehri/attribution.hpp"
#include "blehri/proximity.hpp"
#include "blehri/touch.hpp"

namespace blehri {

std::string touch_report_csv(std::span<const TouchReport> reports);
std::string render_touch_table(std::span<const TouchReport> reports);

std::string attribution_report_csv(const AttributionReport& report);
std::string render_attribution_table(const AttributionReport& report);

std::string zone_timeline_text(const ZoneTimeline& timeline);
std::string render_zone_summary(const ZoneTimeline& timeline);

// Columns: t_ms, touch, one RSS column per beacon (last-value hold, empty
// before the first sample), and truth_person when the trace has ground
// truth. One row per distinct advertisement or frame timestamp.
std::string plot_data_csv(const EventTrace& trace);

}  // namespace blehri
