#pragma once

// Closed-form torque models of the rotary electroadhesive clutch.
//
// Everything here is a pure function of immutable value types. Stresses are
// in N/m^2, torques in N*m, voltages in V, times in s, frequencies in Hz.

#include <map>

namespace eacl {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kDefaultVoltageLimit = 340.0;

struct ClutchGeometry {
  double r_inner = 0.04;
  double r_outer = 0.06;

  void validate() const;
};

struct DielectricStack {
  double eps_r = 35.0;
  double eps_0 = kVacuumPermittivity;
  double thickness_d = 80e-6;
  double sigma_0 = 0.02;  // spring preload stress
  double c_f = 1.0;       // built-in gains have c_f folded in

  void validate() const;
};

// Steady-state AC parameters identified at one activation frequency.
struct AcSteadyParams {
  double gain_K = 0.0;
  double exponent_n1 = 0.0;
  double sat_voltage_c = 0.0;
  double sharpness_delta = 0.0;
  double frequency = 0.0;

  void validate() const;
};

struct TransientParams {
  double alpha = 0.82;
  double tau_1 = 0.14;
  double tau_2 = 18.70;

  void validate() const;
};

struct DcDegradationParams {
  double tau_d = 20.9;
  double exponent_n2 = 1.17;
  double coeff_Cs = 0.0017;

  void validate() const;
};

struct ClutchModel {
  ClutchGeometry geometry;
  DielectricStack stack;
  std::map<double, AcSteadyParams> ac_by_frequency;
  TransientParams transient;
  DcDegradationParams dc;
  double voltage_limit = kDefaultVoltageLimit;
  // AC parameter set that the DC law multiplies (DC runs were not tied to a
  // frequency, so one identified set has to stand in for the steady part).
  double dc_base_frequency = 300.0;

  void validate() const;

  // Throws MissingParameterSet when `frequency` was not identified.
  const AcSteadyParams& ac_params(double frequency) const;
  const AcSteadyParams& dc_base_params() const { return ac_params(dc_base_frequency); }
};

AcSteadyParams table_params_300hz();
AcSteadyParams table_params_400hz();
AcSteadyParams table_params_500hz();

// Canonical build: 8/12 cm friction ring, 80 um dielectric, all three
// identified frequencies, 340 V limit.
ClutchModel default_model();

// ln(1 + e^x) without overflow.
double softplus(double x);

// Coulomb shear for ideal conductors, quadratic in v.
double ideal_conductor_shear(double v, const DielectricStack& stack);

// Torque of a friction ring under uniform shear.
double ring_torque(double shear, const ClutchGeometry& geom);

// Voltage at which v - softplus(delta (v - c)) peaks. Infinite when
// delta <= 1, where the expression is already nondecreasing.
double saturation_knee(const AcSteadyParams& p);

// Saturated voltage, clamped to its peak value above the knee so the result
// never decreases with v.
double effective_voltage(double v, const AcSteadyParams& p);

// Steady AC shear. Throws VoltageOutOfDomain outside [0, voltage_limit].
double ac_steady_shear(double v, const AcSteadyParams& p, const DielectricStack& stack,
                       double voltage_limit = kDefaultVoltageLimit);

// Two-time-constant rise after switch-on, in [0, 1).
double activation_envelope(double t, const TransientParams& tp);

double ac_shear(double t, double v, const ClutchModel& model, double freq);

// Fraction of the AC torque lost at full DC degradation, clamped to [0, 1].
double degradation_fraction(double v, const DcDegradationParams& dc);

double dc_shear(double t, double v, const ClutchModel& model);

// Shear sustained by trapped charge after switch-off. Starts at the
// degradation deficit accumulated over `t_on_duration` and relaxes with tau_d.
double residual_shear(double t_since_off, double v_at_off, double t_on_duration,
                      const ClutchModel& model);

}  // namespace eacl
