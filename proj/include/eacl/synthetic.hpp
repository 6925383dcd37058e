#pragma once

// Reproducible synthetic measurements: model curves and bench traces with
// additive zero-mean Gaussian noise drawn from a seeded mt19937_64.

#include <cstdint>
#include <vector>

#include "eacl/clutch_sim.hpp"
#include "eacl/identification.hpp"

namespace eacl {

inline constexpr double kDefaultNoiseStd = 0.02;  // N*m

// `count` evenly spaced voltages from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t count);

// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> voltage_grid(double lo, double hi, double step);

SteadyDataset make_steady_dataset(const AcSteadyParams& params, const ClutchGeometry& geom,
                                  const DielectricStack& stack, const std::vector<double>& voltages,
                                  double noise_std, std::uint64_t seed);

// Adds noise to the transmitted column; capacity stays the model truth.
TorqueTrace add_noise(TorqueTrace trace, double noise_std, std::uint64_t seed);

// Single activation from t_on to t_off on the always-slipping bench.
ActivationProgram single_activation(const Signal& signal, double t_on, double t_off,
                                    double duration);

}  // namespace eacl
