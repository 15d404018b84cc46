#include "blehri/scenario_config.hpp"

#include <charconv>
#include <functional>
#include <map>

namespace blehri {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

struct Setter {
  using Fn = std::function<bool(Scenario&, std::string_view)>;
  Fn apply;
};

template <typename Field>
Setter field(Field& (*get)(Scenario&)) {
  return {[get](Scenario& s, std::string_view v) { return parse_number(v, get(s)); }};
}

std::vector<int> parse_int_list(std::string_view v, bool& ok) {
  std::vector<int> out;
  ok = true;
  for (auto part : split(v, ',')) {
    int x = 0;
    if (!parse_number(part, x)) {
      ok = false;
      return {};
    }
    out.push_back(x);
  }
  return out;
}

bool parse_script(std::string_view v, Scenario& s) {
  if (v == "random") {
    if (!s.random_script) s.random_script = RandomScriptParams{};
    return true;
  }
  s.random_script.reset();
  s.game.touch_script.clear();
  if (v.empty() || v == "none") return true;
  for (auto entry : split(v, ',')) {
    const auto dash = entry.find('-');
    const auto colon = entry.find(':');
    if (dash == std::string_view::npos || colon == std::string_view::npos || colon < dash) {
      return false;
    }
    ScriptedTouch t;
    if (!parse_number(entry.substr(0, dash), t.start_ms) ||
        !parse_number(entry.substr(dash + 1, colon - dash - 1), t.end_ms) ||
        !parse_number(entry.substr(colon + 1), t.person_id)) {
      return false;
    }
    s.game.touch_script.push_back(t);
  }
  return true;
}

RandomScriptParams& random_params(Scenario& s) {
  if (!s.random_script) s.random_script = RandomScriptParams{};
  return *s.random_script;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"scenario", {[](Scenario& s, std::string_view v) {
         if (v == "recede") s.kind = ScenarioKind::Recede;
         else if (v == "game") s.kind = ScenarioKind::Game;
         else return false;
         return true;
       }}},
      {"seed", field(+[](Scenario& s) -> std::uint64_t& { return s.config.rng_seed; })},
      {"rng_seed", field(+[](Scenario& s) -> std::uint64_t& { return s.config.rng_seed; })},
      {"duration_ms", field(+[](Scenario& s) -> Millis& { return s.config.duration_ms; })},
      {"adv_interval_ms", field(+[](Scenario& s) -> Millis& { return s.config.adv_interval_ms; })},
      {"jitter_ms", field(+[](Scenario& s) -> Millis& { return s.config.jitter_ms; })},
      {"frame_interval_ms", field(+[](Scenario& s) -> Millis& { return s.config.frame_interval_ms; })},
      {"frame_drop_rate", field(+[](Scenario& s) -> double& { return s.config.frame_drop_rate; })},
      {"tx_power_dbm", {[](Scenario& s, std::string_view v) {
         bool ok = false;
         s.config.tx_power_dbm = parse_int_list(v, ok);
         return ok;
       }}},
      {"packet_loss_rate", field(+[](Scenario& s) -> double& { return s.channel.packet_loss_rate; })},
      {"receiver_sensitivity_dbm",
       field(+[](Scenario& s) -> int& { return s.channel.receiver_sensitivity_dbm; })},
      {"rss_at_1m_dbm", field(+[](Scenario& s) -> double& { return s.channel.path_loss.rss_at_1m_dbm; })},
      {"exponent_n", field(+[](Scenario& s) -> double& { return s.channel.path_loss.exponent_n; })},
      {"shadowing_sigma_db",
       field(+[](Scenario& s) -> double& { return s.channel.path_loss.shadowing_sigma_db; })},
      {"dip_probability_per_adv",
       field(+[](Scenario& s) -> double& { return s.channel.occlusion.dip_probability_per_adv; })},
      {"dip_attenuation_db",
       field(+[](Scenario& s) -> double& { return s.channel.occlusion.dip_attenuation_db; })},
      {"dip_min_duration_ms",
       field(+[](Scenario& s) -> Millis& { return s.channel.occlusion.dip_min_duration_ms; })},
      {"dip_max_duration_ms",
       field(+[](Scenario& s) -> Millis& { return s.channel.occlusion.dip_max_duration_ms; })},
      {"speed_m_per_s", field(+[](Scenario& s) -> double& { return s.recede.speed_m_per_s; })},
      {"start_m", field(+[](Scenario& s) -> double& { return s.recede.start_m; })},
      {"persons", {[](Scenario& s, std::string_view v) {
         bool ok = false;
         s.game.persons = parse_int_list(v, ok);
         return ok;
       }}},
      {"contact_distance_m", field(+[](Scenario& s) -> double& { return s.game.contact_distance_m; })},
      {"ambient_distance_m", field(+[](Scenario& s) -> double& { return s.game.ambient_distance_m; })},
      {"idle_distance_m", field(+[](Scenario& s) -> double& { return s.game.idle_distance_m; })},
      {"approach_lead_ms", field(+[](Scenario& s) -> Millis& { return s.game.approach_lead_ms; })},
      {"touch_script", {[](Scenario& s, std::string_view v) { return parse_script(v, s); }}},
      {"touch_min_ms", field(+[](Scenario& s) -> Millis& { return random_params(s).touch_min_ms; })},
      {"touch_max_ms", field(+[](Scenario& s) -> Millis& { return random_params(s).touch_max_ms; })},
      {"gap_min_ms", field(+[](Scenario& s) -> Millis& { return random_params(s).gap_min_ms; })},
      {"gap_max_ms", field(+[](Scenario& s) -> Millis& { return random_params(s).gap_max_ms; })},
  };
  return table;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(lineno, std::string(line), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(lineno, key, "unknown key");
    if (!it->second.apply(s, value)) {
      throw ConfigError(lineno, key, "invalid value '" + std::string(value) + "'");
    }
  }
  try {
    s.config.validate();
    s.channel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(lineno, "", e.what());
  }
  return s;
}

EventTrace generate_scenario(const Scenario& scenario) {
  if (scenario.kind == ScenarioKind::Recede) {
    return generate_recede_scenario(scenario.config, scenario.channel, scenario.recede);
  }
  GameParams game = scenario.game;
  if (scenario.random_script) {
    game.touch_script = random_touch_script(scenario.config, game.persons, *scenario.random_script);
  }
  return generate_two_person_game(scenario.config, scenario.channel, game);
}

}  // namespace blehri
