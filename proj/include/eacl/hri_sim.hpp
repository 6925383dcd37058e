#pragma once

// One-DoF haptic loop: scripted handle, virtual rotational spring, PI torque
// controller commanding clutch voltage through a first-order actuator lag.

#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "eacl/clutch_sim.hpp"
#include "eacl/core_models.hpp"

namespace eacl {

// theta(t) = offset + amplitude * sin(2 pi t / period + phase)
struct HandTrajectory {
  double amplitude = std::numbers::pi / 4.0;
  double period = 8.0;
  double offset = -std::numbers::pi / 4.0;
  double phase = 0.0;

  double angle(double t) const;
  double velocity(double t) const;
};

struct PiGains {
  double kp = 200.0;  // V per N*m
  double ki = 0.0;    // V per N*m*s
  double v_min = 0.0;
  double v_max = kDefaultVoltageLimit;
};

struct PiState {
  double integral = 0.0;
};

struct HriScenario {
  double env_stiffness = 2.0;  // N*m/rad
  double env_lo = -std::numbers::pi / 2.0;
  double env_hi = 0.0;
  PiGains gains{200.0, 10000.0};
  double rotor_rpm = 15.0;
  HandTrajectory hand;
  double actuator_lag = 0.05;
  double dt = kDefaultDt;
  double duration = 24.0;
  bool release_switch = false;
  double frequency = 500.0;
  // Metrics ignore samples before this time (controller transient).
  double settle_time = 2.0;
  // Encoder quantization in counts per revolution; 0 disables it.
  int encoder_counts = 0;
  double stiction_band = kDefaultStictionBand;

  void validate() const;
};

struct HriRow {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double desired_torque = 0.0;
  double rendered_torque = 0.0;
  double v_command = 0.0;
  double capacity = 0.0;
  std::optional<double> rendered_stiffness;
};

struct HriTrace {
  double dt = kDefaultDt;
  std::vector<HriRow> rows;
};

struct HriMetrics {
  double torque_rmse = 0.0;          // after settle_time
  double steady_state_error = 0.0;   // mean desired - rendered over the last 10 %
  double peak_desired = 0.0;
};

struct HriResult {
  HriTrace trace;
  HriMetrics metrics;
};

inline constexpr double kStiffnessMinAngle = 0.05;  // rad
inline constexpr double kExitVelocity = 1e-3;       // rad/s

// Spring anchored at theta = 0, active inside [env_lo, env_hi]. Positive
// torque pushes the handle back out of the domain.
double env_torque(double theta, const HriScenario& scenario);

// PI with conditional integration: the integral holds while the output is
// clamped and the error would push it further into saturation.
std::pair<double, PiState> controller_step(double error, const PiState& state,
                                           const PiGains& gains, double dt);

HriResult run_scenario(const HriScenario& scenario, const ClutchModel& model);

}  // namespace eacl
