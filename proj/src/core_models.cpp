#include "eacl/core_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eacl/errors.hpp"

namespace eacl {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

void check_voltage(double v, double limit) {
  if (!(v >= 0.0) || v > limit) throw VoltageOutOfDomain(v, limit);
}

}  // namespace

void ClutchGeometry::validate() const {
  require(r_inner > 0.0 && r_inner < r_outer, "geometry requires 0 < r_inner < r_outer");
}

void DielectricStack::validate() const {
  require(eps_r >= 1.0, "eps_r must be >= 1");
  require(eps_0 > 0.0, "eps_0 must be positive");
  require(thickness_d > 0.0, "dielectric thickness must be positive");
  require(sigma_0 >= 0.0, "sigma_0 must be non-negative");
  require(c_f > 0.0, "c_f must be positive");
}

void AcSteadyParams::validate() const {
  require(gain_K > 0.0, "AC gain K must be positive");
  require(exponent_n1 > 0.0, "AC exponent n1 must be positive");
  require(sat_voltage_c > 0.0, "saturation voltage c must be positive");
  require(sharpness_delta > 0.0, "sharpness delta must be positive");
}

void TransientParams::validate() const {
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  require(tau_1 > 0.0 && tau_2 > 0.0, "time constants must be positive");
  require(tau_1 <= tau_2, "tau_1 must not exceed tau_2");
}

void DcDegradationParams::validate() const {
  require(tau_d > 0.0, "tau_d must be positive");
  require(coeff_Cs >= 0.0, "Cs must be non-negative");
  require(std::isfinite(exponent_n2), "n2 must be finite");
}

void ClutchModel::validate() const {
  geometry.validate();
  stack.validate();
  transient.validate();
  dc.validate();
  require(voltage_limit > 0.0, "voltage limit must be positive");
  for (const auto& [freq, p] : ac_by_frequency) {
    require(freq == p.frequency, "AC parameter set keyed under the wrong frequency");
    p.validate();
  }
}

const AcSteadyParams& ClutchModel::ac_params(double frequency) const {
  auto it = ac_by_frequency.find(frequency);
  if (it == ac_by_frequency.end()) throw MissingParameterSet(frequency);
  return it->second;
}

AcSteadyParams table_params_300hz() { return {1.01e-4, 3.89, 306.51, 38.89, 300.0}; }
AcSteadyParams table_params_400hz() { return {2.45e-4, 3.74, 279.49, 25.83, 400.0}; }
AcSteadyParams table_params_500hz() { return {7.3e-5, 3.88, 281.92, 6.67, 500.0}; }

ClutchModel default_model() {
  ClutchModel m;
  for (const auto& p : {table_params_300hz(), table_params_400hz(), table_params_500hz()})
    m.ac_by_frequency.emplace(p.frequency, p);
  return m;
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double ideal_conductor_shear(double v, const DielectricStack& stack) {
  return stack.eps_r * stack.eps_0 * v * v * stack.c_f /
         (2.0 * stack.thickness_d * stack.thickness_d);
}

double ring_torque(double shear, const ClutchGeometry& geom) {
  const double r2 = geom.r_outer, r1 = geom.r_inner;
  return 2.0 * std::numbers::pi * (r2 * r2 * r2 - r1 * r1 * r1) * shear / 3.0;
}

double saturation_knee(const AcSteadyParams& p) {
  const double delta = p.sharpness_delta;
  if (delta <= 1.0) return std::numeric_limits<double>::infinity();
  // d/dv [v - softplus(delta (v - c))] = 1 - delta * sigmoid(delta (v - c)) = 0
  return p.sat_voltage_c - std::log(delta - 1.0) / delta;
}

double effective_voltage(double v, const AcSteadyParams& p) {
  const double vv = std::min(v, saturation_knee(p));
  return vv - softplus(p.sharpness_delta * (vv - p.sat_voltage_c));
}

double ac_steady_shear(double v, const AcSteadyParams& p, const DielectricStack& stack,
                       double voltage_limit) {
  check_voltage(v, voltage_limit);
  // V_eff can dip slightly below zero near v = 0 when c is small; the power
  // law is only meaningful for non-negative voltages.
  const double veff = std::max(effective_voltage(v, p), 0.0);
  const double d2 = stack.thickness_d * stack.thickness_d;
  return stack.c_f * (stack.sigma_0 + p.gain_K * stack.eps_r * stack.eps_0 *
                                          std::pow(veff, p.exponent_n1) / d2);
}

double activation_envelope(double t, const TransientParams& tp) {
  return tp.alpha * -std::expm1(-t / tp.tau_1) + (1.0 - tp.alpha) * -std::expm1(-t / tp.tau_2);
}

double ac_shear(double t, double v, const ClutchModel& model, double freq) {
  const AcSteadyParams& p = model.ac_params(freq);
  return ac_steady_shear(v, p, model.stack, model.voltage_limit) *
         activation_envelope(t, model.transient);
}

double degradation_fraction(double v, const DcDegradationParams& dc) {
  if (v <= 0.0 || dc.coeff_Cs <= 0.0) return 0.0;
  return std::clamp(dc.coeff_Cs * std::pow(v, dc.exponent_n2), 0.0, 1.0);
}

double dc_shear(double t, double v, const ClutchModel& model) {
  const double base = ac_shear(t, v, model, model.dc_base_frequency);
  const double progress = -std::expm1(-t / model.dc.tau_d);
  return base * (1.0 - progress * degradation_fraction(v, model.dc));
}

double residual_shear(double t_since_off, double v_at_off, double t_on_duration,
                      const ClutchModel& model) {
  const double steady =
      ac_steady_shear(v_at_off, model.dc_base_params(), model.stack, model.voltage_limit);
  const double accumulated =
      -std::expm1(-t_on_duration / model.dc.tau_d) * degradation_fraction(v_at_off, model.dc);
  return steady * accumulated * std::exp(-t_since_off / model.dc.tau_d);
}

}  // namespace eacl
