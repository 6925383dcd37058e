#include "eacl/sweep.hpp"

namespace eacl {

std::vector<double> steady_torque_curve(const ClutchModel& model, double frequency,
                                        std::span<const double> voltages, Execution execution) {
  const AcSteadyParams& p = model.ac_params(frequency);
  if (execution == Execution::serial) {
    std::vector<double> out(voltages.size());
    for (std::size_t i = 0; i < voltages.size(); ++i)
      out[i] = ring_torque(ac_steady_shear(voltages[i], p, model.stack, model.voltage_limit),
                           model.geometry);
    return out;
  }
  return map_indices(
      voltages.size(),
      [&](std::size_t i) {
        return ring_torque(ac_steady_shear(voltages[i], p, model.stack, model.voltage_limit),
                           model.geometry);
      },
      Execution::parallel);
}

std::vector<TorqueTrace> run_programs(std::span<const ActivationProgram> programs,
                                      const ClutchModel& model, const BenchConfig& bench,
                                      double dt, Execution execution) {
  return map_indices(
      programs.size(), [&](std::size_t i) { return run_program(programs[i], model, bench, dt); },
      execution);
}

std::vector<HriResult> run_scenarios(std::span<const HriScenario> scenarios,
                                     const ClutchModel& model, Execution execution) {
  return map_indices(
      scenarios.size(), [&](std::size_t i) { return run_scenario(scenarios[i], model); },
      execution);
}

}  // namespace eacl
