#include "eacl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eacl/errors.hpp"

namespace eacl {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

std::vector<double> voltage_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw InputError("voltage grid needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = std::min(lo + step * static_cast<double>(i), hi);
  return out;
}

SteadyDataset make_steady_dataset(const AcSteadyParams& params, const ClutchGeometry& geom,
                                  const DielectricStack& stack, const std::vector<double>& voltages,
                                  double noise_std, std::uint64_t seed) {
  if (!(noise_std >= 0.0)) throw InputError("noise std must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  SteadyDataset data;
  data.frequency = params.frequency;
  data.points.reserve(voltages.size());
  for (double v : voltages) {
    const double clean = steady_torque(v, params, geom, stack);
    const double e = noise(rng);
    data.points.push_back({v, clean + noise_std * e});
  }
  return data;
}

TorqueTrace add_noise(TorqueTrace trace, double noise_std, std::uint64_t seed) {
  if (!(noise_std >= 0.0)) throw InputError("noise std must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto& row : trace.rows) row.transmitted += noise_std * noise(rng);
  return trace;
}

ActivationProgram single_activation(const Signal& signal, double t_on, double t_off,
                                    double duration) {
  ActivationProgram p;
  p.segments.push_back({t_on, t_off, signal});
  p.duration = duration;
  return p;
}

}  // namespace eacl
