#pragma once

// Batch kernels over independent model evaluations. Each has a serial
// reference path; the OpenMP path is required to match it bit for bit.

#include <span>
#include <vector>

#include "eacl/clutch_sim.hpp"
#include "eacl/hri_sim.hpp"
#include "eacl/parallel.hpp"

namespace eacl {

// Steady AC torque at each voltage (validated domain enforced).
std::vector<double> steady_torque_curve(const ClutchModel& model, double frequency,
                                        std::span<const double> voltages, Execution execution);

std::vector<TorqueTrace> run_programs(std::span<const ActivationProgram> programs,
                                      const ClutchModel& model, const BenchConfig& bench,
                                      double dt, Execution execution);

std::vector<HriResult> run_scenarios(std::span<const HriScenario> scenarios,
                                     const ClutchModel& model, Execution execution);

}  // namespace eacl
