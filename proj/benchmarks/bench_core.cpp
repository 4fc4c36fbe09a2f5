#include <benchmark/benchmark.h>

#include "rxnet/assets.hpp"
#include "rxnet/engine.hpp"
#include "rxnet/parse.hpp"

namespace {

const rxnet::CompiledNetwork& reference_network() {
    static const rxnet::CompiledNetwork network =
        rxnet::compile_network(rxnet::assets::load_reference_model());
    return network;
}

void BM_ParseReferenceModel(benchmark::State& state) {
    const auto text = rxnet::assets::reference_model_text();
    for (auto _ : state) {
        auto model = rxnet::parse_model(text);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_ParseReferenceModel);

void BM_CompileReferenceModel(benchmark::State& state) {
    const auto model = rxnet::assets::load_reference_model();
    for (auto _ : state) {
        auto network = rxnet::compile_network(model);
        benchmark::DoNotOptimize(network);
    }
}
BENCHMARK(BM_CompileReferenceModel);

void BM_EvalGradient(benchmark::State& state) {
    const auto& network = reference_network();
    std::vector<double> conc(network.species_count(), 1e-4);
    std::vector<double> grad(network.species_count());
    for (auto _ : state) {
        network.eval_into(conc, grad);
        benchmark::DoNotOptimize(grad.data());
    }
}
BENCHMARK(BM_EvalGradient);

void BM_SimulateFixedSteps(benchmark::State& state) {
    const auto& network = reference_network();
    rxnet::Scenario scenario = rxnet::assets::reference_scenario(1);
    scenario.fixed_steps = true;
    scenario.max_steps = static_cast<std::uint64_t>(state.range(0));
    scenario.sample_every = scenario.max_steps;
    for (auto _ : state) {
        auto result = rxnet::simulate(network, scenario);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateFixedSteps)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
