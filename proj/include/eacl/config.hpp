#pragma once

// Run configuration: an INI-style key = value file.
//
//   # comment
//   [model]            r_inner r_outer eps_r eps_0 thickness_d sigma_0 c_f
//                      voltage_limit dc_base_frequency alpha tau_1 tau_2
//                      tau_d n2 Cs
//   [ac.<freq>]        K n1 c delta        (new frequencies need all four)
//   [program]          duration, segment = <start> <end> off|dc <V>|ac <V> <Hz>
//   [bench]            rotor_rpm, demand = slipping|<N*m>
//   [sim]              dt depolarize_duration depolarize_amplitude
//   [sweep]            frequencies v_min v_max v_step
//   [synthetic]        kind = steady|transient|dc, seed noise_std frequency
//                      points v_min v_max voltages t_on t_off duration
//   [fit]              frequency steady_value voltages tau2_guess tau_d_guess
//                      fixed_n2
//   [hri]              stiffness env_lo env_hi kp ki rotor_rpm amplitude period
//                      offset phase actuator_lag dt duration release_switch
//                      frequency settle_time encoder_counts
//
// Lists are separated by spaces or commas. Unknown sections and keys are
// rejected with the offending line.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eacl/clutch_sim.hpp"
#include "eacl/core_models.hpp"
#include "eacl/errors.hpp"
#include "eacl/hri_sim.hpp"

namespace eacl {

class ConfigError : public InputError {
 public:
  ConfigError(std::size_t line, const std::string& field, const std::string& what)
      : InputError((line ? "line " + std::to_string(line) + ": " : std::string()) + field + ": " +
                   what),
        line_(line),
        field_(field) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

struct SweepConfig {
  std::vector<double> frequencies{300.0, 400.0, 500.0};
  double v_min = 0.0;
  double v_max = kDefaultVoltageLimit;
  double v_step = 1.0;
};

struct SyntheticConfig {
  enum class Kind { steady, transient, dc };
  Kind kind = Kind::steady;
  std::optional<std::uint64_t> seed;
  double noise_std = 0.02;
  double frequency = 300.0;
  int points = 20;
  double v_min = 0.0;
  double v_max = kDefaultVoltageLimit;
  std::vector<double> voltages{250.0};
  double t_on = 10.0;
  double t_off = 130.0;
  double duration = 150.0;
};

struct FitConfig {
  double frequency = 300.0;
  std::optional<double> steady_value;
  std::vector<double> voltages;
  double tau2_guess = 18.70;
  double tau_d_guess = 20.9;
  double fixed_n2 = 1.17;
};

struct RunConfig {
  ClutchModel model = default_model();
  ActivationProgram program;
  BenchConfig bench;
  double dt = kDefaultDt;
  double depolarize_duration = 180.0;
  double depolarize_amplitude = 260.0;
  SweepConfig sweep;
  SyntheticConfig synthetic;
  FitConfig fit;
  HriScenario hri;
};

// Parses on top of the defaults in `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});

// Applies one "section.key=value" assignment (CLI override).
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace eacl
