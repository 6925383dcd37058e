#include "eacl/hri_sim.hpp"

#include <algorithm>
#include <cmath>

#include "eacl/errors.hpp"

namespace eacl {

double HandTrajectory::angle(double t) const {
  return offset + amplitude * std::sin(2.0 * std::numbers::pi * t / period + phase);
}

double HandTrajectory::velocity(double t) const {
  const double w = 2.0 * std::numbers::pi / period;
  return amplitude * w * std::cos(w * t + phase);
}

void HriScenario::validate() const {
  if (!(env_stiffness >= 0.0)) throw InputError("environment stiffness must be non-negative");
  if (!(env_lo < env_hi)) throw InputError("environment domain must be a nonempty interval");
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  if (!(actuator_lag >= 0.0)) throw InputError("actuator lag must be non-negative");
  if (!(duration >= 0.0)) throw InputError("duration must be non-negative");
  if (!(hand.period > 0.0)) throw InputError("hand period must be positive");
  if (!(gains.v_min <= gains.v_max)) throw InputError("controller output range is empty");
  if (encoder_counts < 0) throw InputError("encoder counts must be non-negative");
}

double env_torque(double theta, const HriScenario& scenario) {
  if (theta < scenario.env_lo || theta > scenario.env_hi) return 0.0;
  return scenario.env_stiffness * std::abs(theta);
}

std::pair<double, PiState> controller_step(double error, const PiState& state,
                                           const PiGains& gains, double dt) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  const double raw = gains.kp * error + gains.ki * state.integral;
  const double v = std::clamp(raw, gains.v_min, gains.v_max);
  PiState next = state;
  const bool winding_up = (raw > gains.v_max && error > 0.0) || (raw < gains.v_min && error < 0.0);
  if (!winding_up) next.integral += error * dt;
  return {v, next};
}

HriResult run_scenario(const HriScenario& scenario, const ClutchModel& model) {
  scenario.validate();
  model.ac_params(scenario.frequency);

  const std::size_t steps =
      scenario.duration > 0.0
          ? static_cast<std::size_t>(std::ceil(scenario.duration / scenario.dt - 1e-9)) + 1
          : 0;
  const double lag_gain =
      scenario.actuator_lag > 0.0 ? -std::expm1(-scenario.dt / scenario.actuator_lag) : 1.0;
  const double quantum = scenario.encoder_counts > 0
                             ? 2.0 * std::numbers::pi / scenario.encoder_counts
                             : 0.0;
  const PiGains gains{scenario.gains.kp, scenario.gains.ki, 0.0,
                      std::min(scenario.gains.v_max, model.voltage_limit)};

  HriResult result;
  result.trace.dt = scenario.dt;
  result.trace.rows.reserve(steps);

  ClutchState clutch;
  clutch.rotor_speed = rpm_to_rad_per_s(scenario.rotor_rpm);
  PiState pi;
  double v_applied = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    double theta = scenario.hand.angle(t);
    if (quantum > 0.0) theta = quantum * std::round(theta / quantum);
    const double theta_dot = scenario.hand.velocity(t);
    const double desired = env_torque(theta, scenario);

    const bool inside = theta >= scenario.env_lo && theta <= scenario.env_hi;
    const bool release = scenario.release_switch && scenario.rotor_rpm == 0.0 && inside &&
                         theta_dot > kExitVelocity;
    if (release) {
      v_applied = 0.0;
      pi = PiState{};
    }

    clutch.sim_time = t;
    clutch.output_speed = theta_dot;
    const Signal signal = release ? Signal::off() : Signal::ac(v_applied, scenario.frequency);
    const StepResult r =
        step(clutch, scenario.dt, signal, desired, model, scenario.stiction_band);
    clutch = r.state;
    const double rendered = r.transmitted;

    double v_command = 0.0;
    if (!release) {
      auto [v, next] = controller_step(desired - rendered, pi, gains, scenario.dt);
      v_command = v;
      pi = next;
      v_applied += lag_gain * (v_command - v_applied);
    }

    HriRow row{t, theta, theta_dot, desired, rendered, v_command, r.capacity, std::nullopt};
    if (std::abs(theta) > kStiffnessMinAngle) row.rendered_stiffness = rendered / std::abs(theta);
    result.trace.rows.push_back(row);
  }

  auto& m = result.metrics;
  double sum_sq = 0.0;
  std::size_t counted = 0;
  for (const auto& row : result.trace.rows) {
    m.peak_desired = std::max(m.peak_desired, std::abs(row.desired_torque));
    if (row.t >= scenario.settle_time) {
      const double e = row.rendered_torque - row.desired_torque;
      sum_sq += e * e;
      ++counted;
    }
  }
  m.torque_rmse = counted ? std::sqrt(sum_sq / static_cast<double>(counted)) : 0.0;
  const std::size_t tail = std::max<std::size_t>(steps / 10, steps ? 1 : 0);
  double err = 0.0;
  for (std::size_t i = steps - tail; i < steps; ++i)
    err += result.trace.rows[i].desired_torque - result.trace.rows[i].rendered_torque;
  m.steady_state_error = tail ? err / static_cast<double>(tail) : 0.0;
  return result;
}

}  // namespace eacl
