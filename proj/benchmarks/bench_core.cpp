#include <benchmark/benchmark.h>

#include <vector>

#include "piezoharvest/harvester.hpp"
#include "piezoharvest/scenario.hpp"
#include "piezoharvest/storage.hpp"
#include "piezoharvest/sweep.hpp"

using namespace piezoharvest;
using kinematics::Convention;
using kinematics::Frequency;

namespace {

VibrationProfile base_pp(double hz, double dpp) {
    return VibrationProfile::from_displacement(Frequency(hz), {dpp, Convention::peak_to_peak});
}

void BM_run_scenario(benchmark::State& state) {
    auto s = builtin_scenario(BuiltinId::B);
    s.sim.dt = 1.0 / static_cast<double>(state.range(0));
    s.sim.record_interval = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(run(s));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.sim.duration / s.sim.dt));
}
BENCHMARK(BM_run_scenario)->Arg(1)->Arg(10)->Arg(100);

void BM_run_constant_power(benchmark::State& state) {
    auto s = builtin_scenario(BuiltinId::B);
    s.power_stage.charging = power_stage::ConstantPower{0.381e-3, 1.0, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(run(s));
}
BENCHMARK(BM_run_constant_power);

void BM_open_circuit_vpp(benchmark::State& state) {
    const auto p = harvester::ppa2011_tuned();
    const auto base = base_pp(23.5, 0.405e-3);
    for (auto _ : state) benchmark::DoNotOptimize(harvester::open_circuit_vpp(p, base));
}
BENCHMARK(BM_open_circuit_vpp);

void BM_simulate_waveform(benchmark::State& state) {
    const auto p = harvester::ppa2011_tuned();
    const auto base = base_pp(23.5, 0.405e-3);
    const double cycles = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(harvester::simulate_waveform(p, base, cycles / 23.5, harvester::default_step(base)));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}
BENCHMARK(BM_simulate_waveform)->Arg(10)->Arg(100)->Arg(1000);

void BM_calibrate(benchmark::State& state) {
    const auto mech = harvester::ppa2011_tuned();
    const std::vector<harvester::Observation> obs{{base_pp(23.5, 0.210e-3), 22.66}, {base_pp(23.5, 0.405e-3), 26.56}};
    for (auto _ : state) benchmark::DoNotOptimize(harvester::calibrate(mech, obs));
}
BENCHMARK(BM_calibrate);

void BM_time_to_voltage_integrated(benchmark::State& state) {
    const storage::SupercapState cap;
    const power_stage::ConstantPower law{0.381e-3, 0.8, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(storage::time_to_voltage(cap, law, 1.89, 1.89, 1.0));
}
BENCHMARK(BM_time_to_voltage_integrated);

void BM_sweep(benchmark::State& state) {
    const auto s = builtin_scenario(BuiltinId::A);
    std::vector<double> values;
    for (int i = 0; i < 64; ++i) values.push_back(5e-5 + i * 5e-6);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep(s, "power_stage.charging.i_cc_a", values, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_sweep)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
