#pragma once

// Random valid traces for property and oracle tests.

#include <algorithm>
#include <random>
#include <vector>

#include "blehri/trace.hpp"

namespace testgen {

struct TraceShape {
  std::size_t max_events = 2000;
  blehri::Millis span_ms = 60'000;
  int max_persons = 3;
};

inline blehri::EventTrace random_trace(std::mt19937_64& rng, const TraceShape& shape = {}) {
  using namespace blehri;
  std::uniform_int_distribution<std::size_t> total_d(0, shape.max_events);
  const std::size_t total = total_d(rng);
  std::uniform_int_distribution<Millis> t_d(0, shape.span_ms);
  std::uniform_int_distribution<int> rss_d(-100, -30);
  std::uniform_int_distribution<int> person_d(0, shape.max_persons - 1);
  std::uniform_int_distribution<int> att_d(0, 1);
  std::bernoulli_distribution coin(0.5);

  std::vector<GroundTruthTouch> truths;
  Millis t = 0;
  std::uniform_int_distribution<Millis> gap_d(200, 4000), len_d(100, 2000);
  const std::size_t n_truths = total / 40;
  for (std::size_t i = 0; i < n_truths; ++i) {
    t += gap_d(rng);
    const Millis len = len_d(rng);
    truths.push_back({t, t + len, person_d(rng)});
    t += len;
  }

  std::vector<AdvEvent> advs;
  std::vector<RobotFrame> frames;
  const std::size_t rest = total - std::min(total, n_truths);
  for (std::size_t i = 0; i < rest; ++i) {
    if (coin(rng)) {
      advs.push_back({t_d(rng), BeaconIdentity(person_d(rng), static_cast<Attachment>(att_d(rng))),
                      rss_d(rng)});
    } else {
      RobotFrame f{t_d(rng), {}};
      for (auto& s : f.touch_sensors) s = std::bernoulli_distribution(0.15)(rng);
      frames.push_back(f);
    }
  }
  return EventTrace::build(std::move(advs), std::move(frames), std::move(truths));
}

}  // namespace testgen
