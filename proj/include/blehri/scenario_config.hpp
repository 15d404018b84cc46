#pragma once

// Scenario files: flat "key = value" text, '#' comments.
//
//   scenario = game            # recede | game
//   seed = 42
//   duration_ms = 510000
//   tx_power_dbm = 0, -23      # one per beacon, or one shared value
//   touch_script = random      # or "start-end:person, ..."

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "blehri/simulator.hpp"

namespace blehri {

enum class ScenarioKind { Recede, Game };

struct Scenario {
  ScenarioKind kind = ScenarioKind::Game;
  ScenarioConfig config;
  ChannelModel channel;
  RecedeParams recede;
  GameParams game;
  // Set when touch_script = random; the script is drawn at generation time.
  std::optional<RandomScriptParams> random_script;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " +
                           (key.empty() ? what : "key '" + key + "': " + what)),
        line_(line),
        key_(std::move(key)) {}
  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

// Throws ConfigError naming the offending line and key.
Scenario parse_scenario(std::string_view text);

EventTrace generate_scenario(const Scenario& scenario);

}  // namespace blehri
