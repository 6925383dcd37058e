#pragma once

// Fixed-step bench simulator. Torque capacity is evaluated in closed form
// against activation-relative time; only the DC degradation level is carried
// forward step to step so that re-activation and depolarization compose.

#include <optional>
#include <vector>

#include "eacl/core_models.hpp"

namespace eacl {

inline constexpr double kDefaultDt = 0.002;            // 500 Hz acquisition
inline constexpr double kDefaultStictionBand = 1e-3;   // rad/s

struct Signal {
  enum class Kind { off, dc, ac };

  Kind kind = Kind::off;
  double volts = 0.0;
  double frequency = 0.0;  // AC only

  static Signal off() { return {}; }
  static Signal dc(double v) { return {Kind::dc, v, 0.0}; }
  static Signal ac(double v, double f) { return {Kind::ac, v, f}; }

  bool active() const { return kind != Kind::off; }
  // Same activation mode: kind and (for AC) frequency match. Amplitude
  // changes do not restart the envelope clock.
  bool same_mode(const Signal& other) const;

  bool operator==(const Signal&) const = default;
};

struct Segment {
  double start = 0.0;
  double end = 0.0;
  Signal signal;
};

struct ActivationProgram {
  std::vector<Segment> segments;
  // Simulated horizon; segments may end before it so the residual phase is
  // recorded. Zero means "end of the last segment".
  double duration = 0.0;

  double horizon() const;
  // Signal holding at t (segments are half-open [start, end)).
  Signal signal_at(double t) const;
  void validate(double voltage_limit) const;
};

struct ClutchState {
  double sim_time = 0.0;
  std::optional<double> active_since;
  Signal last_signal;
  double accumulated_degradation = 0.0;  // torque-domain proxy for trapped charge
  double residual_at_off = 0.0;          // N/m^2 at the moment of switch-off
  std::optional<double> off_since;
  double rotor_speed = 0.0;   // rad/s
  double output_speed = 0.0;  // rad/s

  double slip_speed() const { return rotor_speed - output_speed; }
};

struct StepResult {
  ClutchState state;
  double capacity = 0.0;
  double transmitted = 0.0;
};

// Dry friction: kinetic outside the stiction band, otherwise the demand
// clamped to the capacity.
double transmitted_torque(double capacity, double slip_speed, double demand,
                          double stiction_band = kDefaultStictionBand);

// Evaluate the clutch at state.sim_time under `signal`, then advance by dt.
StepResult step(const ClutchState& state, double dt, const Signal& signal, double demand,
                const ClutchModel& model, double stiction_band = kDefaultStictionBand);

// AC depolarization between tests: trapped charge relaxes with tau_d over
// `duration`. Simulated time does not advance.
ClutchState depolarize(const ClutchState& state, double duration, double amplitude,
                       const ClutchModel& model);

struct TraceRow {
  double t = 0.0;
  double v_command = 0.0;
  double capacity = 0.0;
  double transmitted = 0.0;
  double slip_speed = 0.0;
};

struct TorqueTrace {
  double dt = kDefaultDt;
  std::vector<TraceRow> rows;
};

struct BenchConfig {
  double rotor_rpm = 5.0;
  // Load torque demanded at the output; nullopt models a motor strong enough
  // to keep the discs sliding, so transmitted equals capacity.
  std::optional<double> demand;
};

double rpm_to_rad_per_s(double rpm);

struct SimRun {
  TorqueTrace trace;
  ClutchState final_state;
};

SimRun run_program_from(const ClutchState& initial, const ActivationProgram& program,
                        const ClutchModel& model, const BenchConfig& bench,
                        double dt = kDefaultDt);

// ceil(horizon / dt) + 1 rows, or none for a zero horizon.
TorqueTrace run_program(const ActivationProgram& program, const ClutchModel& model,
                        const BenchConfig& bench, double dt = kDefaultDt);

}  // namespace eacl
