#include <benchmark/benchmark.h>

#include "pv/characters.hpp"
#include "pv/charsums.hpp"
#include "pv/harness.hpp"

namespace {

pv::DirichletCharacter first_primitive(std::uint32_t q) {
  const pv::UnitGroup group(q);
  for (auto& chi : pv::enumerate_characters(group))
    if (chi.is_primitive()) return chi;
  throw std::runtime_error("no primitive character");
}

void BM_MaxIntervalSum(benchmark::State& state) {
  const auto chi = first_primitive(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pv::char_sums(chi));
}
BENCHMARK(BM_MaxIntervalSum)->Arg(199)->Arg(1999)->Arg(19997);

void BM_BruteForceS(benchmark::State& state) {
  const auto chi = first_primitive(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pv::brute_force_s(chi, pv::kBruteForceCap));
}
BENCHMARK(BM_BruteForceS)->Arg(199)->Arg(1999);

void BM_EnumerateCharacters(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    const pv::UnitGroup group(q);
    benchmark::DoNotOptimize(pv::enumerate_characters(group));
  }
}
BENCHMARK(BM_EnumerateCharacters)->Arg(360)->Arg(1999);

void BM_SweepModulus(benchmark::State& state) {
  pv::SweepConfig cfg;
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pv::sweep_modulus(q, cfg));
}
BENCHMARK(BM_SweepModulus)->Arg(997)->Arg(1999)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
