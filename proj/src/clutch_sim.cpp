#include "eacl/clutch_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eacl/errors.hpp"

namespace eacl {

bool Signal::same_mode(const Signal& other) const {
  if (kind != other.kind) return false;
  return kind != Kind::ac || frequency == other.frequency;
}

double ActivationProgram::horizon() const {
  if (duration > 0.0) return duration;
  double end = 0.0;
  for (const auto& seg : segments) end = std::max(end, seg.end);
  return end;
}

Signal ActivationProgram::signal_at(double t) const {
  for (const auto& seg : segments)
    if (t >= seg.start && t < seg.end) return seg.signal;
  return Signal::off();
}

void ActivationProgram::validate(double voltage_limit) const {
  if (duration < 0.0) throw InputError("program duration must be non-negative");
  double prev_end = -std::numeric_limits<double>::infinity();
  for (const auto& seg : segments) {
    if (!(seg.start >= 0.0 && seg.end > seg.start))
      throw InputError("program segment must satisfy 0 <= start < end");
    if (seg.start < prev_end) throw InputError("program segments overlap or are out of order");
    prev_end = seg.end;
    if (seg.signal.active() && (!(seg.signal.volts >= 0.0) || seg.signal.volts > voltage_limit))
      throw VoltageOutOfDomain(seg.signal.volts, voltage_limit);
    if (seg.signal.kind == Signal::Kind::ac && !(seg.signal.frequency > 0.0))
      throw InputError("AC segment needs a positive frequency");
  }
}

double transmitted_torque(double capacity, double slip_speed, double demand,
                          double stiction_band) {
  if (std::abs(slip_speed) > stiction_band) return slip_speed > 0.0 ? capacity : -capacity;
  return std::clamp(demand, -capacity, capacity);
}

namespace {

double steady_shear_for(const Signal& s, const ClutchModel& model) {
  const AcSteadyParams& p =
      s.kind == Signal::Kind::dc ? model.dc_base_params() : model.ac_params(s.frequency);
  return ac_steady_shear(s.volts, p, model.stack, model.voltage_limit);
}

}  // namespace

StepResult step(const ClutchState& state, double dt, const Signal& signal, double demand,
                const ClutchModel& model, double stiction_band) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");

  ClutchState s = state;
  const double t = s.sim_time;
  const Signal& prev = state.last_signal;

  if (!signal.same_mode(prev)) {
    if (prev.active()) s.residual_at_off = steady_shear_for(prev, model) * s.accumulated_degradation;
    if (signal.active()) {
      s.active_since = t;
      s.off_since.reset();
    } else {
      s.active_since.reset();
      s.off_since = t;
    }
  }

  double shear = 0.0;
  switch (signal.kind) {
    case Signal::Kind::dc: {
      const double elapsed = t - *s.active_since;
      shear = ac_shear(elapsed, signal.volts, model, model.dc_base_frequency) *
              (1.0 - s.accumulated_degradation);
      break;
    }
    case Signal::Kind::ac:
      shear = ac_shear(t - *s.active_since, signal.volts, model, signal.frequency);
      break;
    case Signal::Kind::off:
      if (s.off_since) shear = s.residual_at_off * std::exp(-(t - *s.off_since) / model.dc.tau_d);
      break;
  }

  StepResult out;
  out.capacity = ring_torque(shear, model.geometry);
  out.transmitted = transmitted_torque(out.capacity, s.slip_speed(), demand, stiction_band);

  // Degradation relaxes toward g(v) under DC and toward zero otherwise; the
  // update is exact for a signal held over the step.
  const double decay = std::exp(-dt / model.dc.tau_d);
  if (signal.kind == Signal::Kind::dc) {
    const double g = degradation_fraction(signal.volts, model.dc);
    s.accumulated_degradation = g + (s.accumulated_degradation - g) * decay;
  } else {
    s.accumulated_degradation *= decay;
  }
  s.accumulated_degradation = std::clamp(s.accumulated_degradation, 0.0, 1.0);
  s.last_signal = signal;
  s.sim_time = t + dt;
  out.state = s;
  return out;
}

ClutchState depolarize(const ClutchState& state, double duration, double amplitude,
                       const ClutchModel& model) {
  if (!(duration >= 0.0)) throw InputError("depolarization duration must be non-negative");
  if (!(amplitude >= 0.0) || amplitude > model.voltage_limit)
    throw VoltageOutOfDomain(amplitude, model.voltage_limit);
  if (duration == 0.0) return state;
  ClutchState s = state;
  const double decay = std::exp(-duration / model.dc.tau_d);
  s.accumulated_degradation *= decay;
  s.residual_at_off *= decay;
  return s;
}

double rpm_to_rad_per_s(double rpm) { return rpm * 2.0 * std::numbers::pi / 60.0; }

SimRun run_program_from(const ClutchState& initial, const ActivationProgram& program,
                        const ClutchModel& model, const BenchConfig& bench, double dt) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  program.validate(model.voltage_limit);

  const double horizon = program.horizon();
  const std::size_t rows =
      horizon > 0.0 ? static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9)) + 1 : 0;

  SimRun run;
  run.trace.dt = dt;
  run.trace.rows.reserve(rows);
  ClutchState s = initial;
  s.rotor_speed = rpm_to_rad_per_s(bench.rotor_rpm);
  s.output_speed = 0.0;
  const double t0 = initial.sim_time;

  for (std::size_t k = 0; k < rows; ++k) {
    const double tp = static_cast<double>(k) * dt;
    s.sim_time = t0 + tp;
    const Signal sig = program.signal_at(tp);
    StepResult r = step(s, dt, sig, bench.demand.value_or(0.0), model);
    const double transmitted = bench.demand ? r.transmitted : r.capacity;
    run.trace.rows.push_back({tp, sig.active() ? sig.volts : 0.0, r.capacity, transmitted,
                              s.slip_speed()});
    s = r.state;
  }
  run.final_state = s;
  return run;
}

TorqueTrace run_program(const ActivationProgram& program, const ClutchModel& model,
                        const BenchConfig& bench, double dt) {
  return run_program_from(ClutchState{}, program, model, bench, dt).trace;
}

}  // namespace eacl
