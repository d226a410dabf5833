#include <benchmark/benchmark.h>

#include <numbers>

#include "deflab/def_engine.hpp"
#include "deflab/simulator.hpp"

namespace {

// 0.5 Hz forcing for `periods` cycles on the three-element bench.
struct Setup {
    deflab::ForcingSpec spec;
    deflab::ScenarioElements elements;
};

Setup make_setup(double periods) {
    Setup s;
    s.spec = deflab::make_forcing(std::numbers::pi, 0.01, std::numbers::pi / 5, 2.0 * periods);
    s.elements = deflab::make_elements(s.spec, deflab::GeneratorParams{}, 0.5,
                                       deflab::ImpedanceLoad::from_admittance(1.0, -0.5), 0.8, 0.2);
    return s;
}

void BM_RunScenario(benchmark::State& state) {
    const Setup s = make_setup(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(deflab::run_scenario(s.spec, s.elements, 0.5));
}
BENCHMARK(BM_RunScenario)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_DefIntegral(benchmark::State& state) {
    const Setup s = make_setup(30);
    const deflab::ScenarioResult r = deflab::run_scenario(s.spec, s.elements, 0.5);
    const deflab::DefOptions opt = deflab::def_options(s.spec);
    for (auto _ : state) benchmark::DoNotOptimize(deflab::def_integral(r.generator, opt));
}
BENCHMARK(BM_DefIntegral)->Unit(benchmark::kMillisecond);

void BM_DefIntegralRaw(benchmark::State& state) {
    const Setup s = make_setup(30);
    const deflab::ScenarioResult r = deflab::run_scenario(s.spec, s.elements, 0.5);
    const deflab::DefOptions opt = deflab::def_options(s.spec);
    for (auto _ : state) benchmark::DoNotOptimize(deflab::def_integral_raw(r.generator, opt));
}
BENCHMARK(BM_DefIntegralRaw)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
