#include <benchmark/benchmark.h>

#include "deflab/element_models.hpp"
#include "deflab/passivity.hpp"

namespace {

deflab::ClassicalGenerator bench_generator() {
    deflab::GeneratorParams params;
    return deflab::generator_equilibrium(params, 1.0, 0.0, 0.5);
}

void BM_KMatrixEigen(benchmark::State& state) {
    const deflab::ClassicalGenerator gen = bench_generator();
    double omega = 0.5;
    for (auto _ : state) {
        const auto k = deflab::k_matrix(deflab::frf_generator(gen, omega), omega);
        benchmark::DoNotOptimize(deflab::eig_hermitian_2x2(k));
        omega = omega < 60.0 ? omega * 1.01 : 0.5;
    }
}
BENCHMARK(BM_KMatrixEigen);

void BM_ClassifySweep(benchmark::State& state) {
    const deflab::ElementModel model = bench_generator();
    const auto grid = deflab::log_frequency_grid(0.01, 10.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(deflab::classify(model, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClassifySweep)->Arg(50)->Arg(1000);

}  // namespace
