#include <benchmark/benchmark.h>

#include "eacl/identification.hpp"
#include "eacl/sweep.hpp"
#include "eacl/synthetic.hpp"

namespace {

using namespace eacl;

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_SteadySweep(benchmark::State& state) {
  const auto m = default_model();
  const auto volts = linspace(0.0, 340.0, 100001);
  for (auto _ : state) benchmark::DoNotOptimize(steady_torque_curve(m, 300.0, volts, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(volts.size()));
  label(state);
}
BENCHMARK(BM_SteadySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SteadyFitMultiStart(benchmark::State& state) {
  const auto m = default_model();
  const auto data = make_steady_dataset(table_params_300hz(), m.geometry, m.stack, linspace(0, 340, 20), 0.02, 1);
  FitOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(fit_ac_steady(data, m.geometry, m.stack, opts));
  label(state);
}
BENCHMARK(BM_SteadyFitMultiStart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Monte Carlo over DC programs at random voltages.
void BM_DcProgramBatch(benchmark::State& state) {
  const auto m = default_model();
  std::vector<ActivationProgram> programs;
  for (int i = 0; i < 64; ++i) programs.push_back(single_activation(Signal::dc(50.0 + 3.0 * i), 10.0, 190.0, 250.0));
  for (auto _ : state) benchmark::DoNotOptimize(run_programs(programs, m, BenchConfig{}, kDefaultDt, mode(state)));
  label(state);
}
BENCHMARK(BM_DcProgramBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HriScenarioBatch(benchmark::State& state) {
  const auto m = default_model();
  std::vector<HriScenario> scenarios(32);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    scenarios[i].env_stiffness = 0.5 + 0.1 * static_cast<double>(i);
    scenarios[i].gains.kp = 100.0 + 20.0 * static_cast<double>(i);
  }
  for (auto _ : state) benchmark::DoNotOptimize(run_scenarios(scenarios, m, mode(state)));
  label(state);
}
BENCHMARK(BM_HriScenarioBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
