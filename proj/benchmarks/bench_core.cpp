// Apache License, Version 2.0, refer to LICENSE.txt

#include <benchmark/benchmark.h>

#include "noise_sieve/decision_tree.hpp"
#include "noise_sieve/evaluation.hpp"
#include "noise_sieve/naive_bayes.hpp"
#include "noise_sieve/noise_filter.hpp"
#include "noise_sieve/synth.hpp"

namespace {

using namespace noise_sieve;

Dataset noisy_dataset(std::size_t n) {
  GeneratorConfig config;
  config.attributes = {{"DayTime", {"Mon[S1]", "Mon[S2]", "Wed[S1]", "Wed[S2]", "Fri[S1]", "Fri[S2]"}},
                       {"Location", {"Office", "Home", "Outside"}},
                       {"Situation", {"Meeting", "Seminar", "Dinner", "Free"}},
                       {"Relationship", {"Friend", "Colleague", "Boss", "Mother", "Unknown"}}};
  config.rules = {{{{"Relationship", "Boss"}}, "Accept"},
                  {{{"Situation", "Meeting"}}, "Reject"},
                  {{{"Location", "Home"}}, "Accept"},
                  {{{"Relationship", "Unknown"}}, "Missed"}};
  config.default_label = "Accept";
  config.n = n;
  config.seed = 7;
  return inject_noise(generate(config), 0.1, 8).first;
}

void BM_Fit(benchmark::State& state) {
  const auto data = noisy_dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(NaiveBayesModel::fit(data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Fit)->Arg(500)->Arg(5000)->Arg(50000);

void BM_DetectNoise(benchmark::State& state) {
  const auto data = noisy_dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detect_noise(data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectNoise)->Arg(500)->Arg(5000)->Arg(50000);

void BM_BuildTree(benchmark::State& state) {
  const auto data = noisy_dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(data));
}
BENCHMARK(BM_BuildTree)->Arg(500)->Arg(5000);

void BM_Compare(benchmark::State& state) {
  const auto data = noisy_dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compare(data));
}
BENCHMARK(BM_Compare)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
