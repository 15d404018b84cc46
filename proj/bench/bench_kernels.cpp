// Parallel kernels vs their serial references on a long synthetic game.
//
//   ./build/bench/bench_kernels --benchmark_min_time=0.5
//   OMP_NUM_THREADS=4 ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include <map>

#include "blehri/attribution.hpp"
#include "blehri/simulator.hpp"
#include "blehri/touch.hpp"

namespace {

const blehri::EventTrace& game_trace(blehri::Millis duration_ms) {
  static std::map<blehri::Millis, blehri::EventTrace> cache;
  auto it = cache.find(duration_ms);
  if (it == cache.end()) {
    blehri::ScenarioConfig config;
    config.duration_ms = duration_ms;
    blehri::ChannelModel channel;
    channel.occlusion.dip_probability_per_adv = 0.05;
    channel.occlusion.dip_attenuation_db = 30;
    blehri::GameParams game;
    game.touch_script = blehri::random_touch_script(config, game.persons, {});
    it = cache.emplace(duration_ms, blehri::generate_two_person_game(config, channel, game)).first;
  }
  return it->second;
}

void BM_TouchParallel(benchmark::State& state) {
  const auto& trace = game_trace(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(blehri::evaluate_touch(trace, blehri::kDefaultTouchThresholds));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.frames().size()));
}

void BM_TouchSerial(benchmark::State& state) {
  const auto& trace = game_trace(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(blehri::evaluate_touch_serial(trace, blehri::kDefaultTouchThresholds));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.frames().size()));
}

void BM_AttributionParallel(benchmark::State& state) {
  const auto& trace = game_trace(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        blehri::evaluate_attribution(trace, blehri::kDefaultAttributionWindows));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.frames().size()));
}

void BM_AttributionSerial(benchmark::State& state) {
  const auto& trace = game_trace(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        blehri::evaluate_attribution_serial(trace, blehri::kDefaultAttributionWindows));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.frames().size()));
}

}  // namespace

BENCHMARK(BM_TouchParallel)->Arg(510'000)->Arg(3'600'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TouchSerial)->Arg(510'000)->Arg(3'600'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttributionParallel)->Arg(510'000)->Arg(3'600'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AttributionSerial)->Arg(510'000)->Arg(3'600'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
