// blehri: simulate BLE traces, replay them through the proximity, touch and
// attribution engines, and export plot data.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blehri/attribution.hpp"
#include "blehri/proximity.hpp"
#include "blehri/reports.hpp"
#include "blehri/scenario_config.hpp"
#include "blehri/touch.hpp"
#include "blehri/trace.hpp"

namespace fs = std::filesystem;
using namespace blehri;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a sibling temp file so a failed run never leaves a partial report.
void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

EventTrace load_trace(const std::string& path) { return parse_trace(read_file(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BLE signal-strength toolkit for proximity, touch and toucher attribution"};
  app.require_subcommand(1);

  std::string scenario_path, trace_path, out_path, mode = "attribution";
  std::optional<std::uint64_t> seed;
  std::vector<int> thresholds(kDefaultTouchThresholds.begin(), kDefaultTouchThresholds.end());
  std::vector<Millis> windows(kDefaultAttributionWindows.begin(), kDefaultAttributionWindows.end());
  Millis vicinity_ms = kDefaultVicinityMs;
  ProximityConfig prox;
  Millis tick_ms = 50;

  auto* simulate = app.add_subcommand("simulate", "Generate a trace from a scenario file");
  simulate->add_option("scenario", scenario_path, "Scenario file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--seed", seed, "Override the scenario's RNG seed");
  simulate->add_option("--out", out_path, "Output trace path (default: stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Replay a trace through one engine");
  evaluate->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--mode", mode, "proximity | touch | attribution")
      ->check(CLI::IsMember({"proximity", "touch", "attribution"}));
  evaluate->add_option("--thresholds", thresholds, "Touch thresholds in dBm, comma separated")
      ->delimiter(',');
  evaluate->add_option("--windows", windows, "Attribution windows in ms, comma separated")
      ->delimiter(',');
  evaluate->add_option("--vicinity-ms", vicinity_ms, "False-positive vicinity (+-ms)");
  evaluate->add_option("--close-threshold-dbm", prox.close_threshold_dbm, "Close-zone threshold");
  evaluate->add_option("--timeout-ms", prox.presence_timeout_ms, "Presence timeout");
  evaluate->add_option("--hysteresis-db", prox.hysteresis_db, "Close-zone hysteresis margin");
  evaluate->add_option("--tick-ms", tick_ms, "Proximity replay tick");
  evaluate->add_option("--out", out_path, "Report path (default: stdout)");

  auto* plotdata = app.add_subcommand("plotdata", "Export per-beacon RSS time series as CSV");
  plotdata->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  plotdata->add_option("--out", out_path, "Output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      Scenario scenario = parse_scenario(read_file(scenario_path));
      if (seed) scenario.config.rng_seed = *seed;
      emit(out_path, serialize_trace_text(generate_scenario(scenario)));
    } else if (*evaluate) {
      const EventTrace trace = load_trace(trace_path);
      if (mode == "proximity") {
        ProximityRunOptions options;
        options.tick_ms = tick_ms;
        const ZoneTimeline timeline = run_proximity(trace, prox, options);
        const std::string text = zone_timeline_text(timeline);
        if (!out_path.empty()) {
          write_file_atomic(out_path, text);
          std::cout << render_zone_summary(timeline);
        } else {
          std::cout << text;
        }
      } else if (mode == "touch") {
        const auto reports = evaluate_touch(trace, thresholds, vicinity_ms);
        if (!out_path.empty()) write_file_atomic(out_path, touch_report_csv(reports));
        std::cout << render_touch_table(reports);
        if (out_path.empty()) std::cout << "\n" << touch_report_csv(reports);
      } else {
        const auto report = evaluate_attribution(trace, windows);
        if (!out_path.empty()) write_file_atomic(out_path, attribution_report_csv(report));
        std::cout << render_attribution_table(report);
        if (out_path.empty()) std::cout << "\n" << attribution_report_csv(report);
      }
    } else if (*plotdata) {
      emit(out_path, plot_data_csv(load_trace(trace_path)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
