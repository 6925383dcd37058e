#include "eacl/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "eacl/config.hpp"
#include "eacl/csv_io.hpp"
#include "eacl/identification.hpp"
#include "eacl/sweep.hpp"
#include "eacl/synthetic.hpp"

namespace eacl {

namespace {

using json = nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-c,--config", common.config_path, "Run configuration file");
  cmd->add_option("--set", common.overrides, "Override a config value: section.key=value");
}

RunConfig load_config(const CommonOptions& common) {
  RunConfig config;
  if (!common.config_path.empty()) config = parse_config(read_file(common.config_path));
  for (const auto& o : common.overrides) apply_override(config, o);
  return config;
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

std::string frequency_tag(double f) { return format_number(f) + "Hz"; }

std::string report_text(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream ss;
  for (const auto& [k, v] : kv) ss << k << " = " << v << '\n';
  return ss.str();
}

template <class P>
void append_fit_common(std::vector<std::pair<std::string, std::string>>& kv, json& j,
                       const FitReport<P>& rep) {
  kv.emplace_back("rmse_Nm", format_number(rep.rmse));
  kv.emplace_back("iterations", std::to_string(rep.iterations));
  kv.emplace_back("converged", rep.converged ? "true" : "false");
  kv.emplace_back("restarts_used", std::to_string(rep.restarts_used));
  j["rmse_Nm"] = rep.rmse;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["restarts_used"] = rep.restarts_used;
}

void emit_report(const std::vector<std::pair<std::string, std::string>>& kv, const json& j,
                 const std::string& out_path, const std::string& json_path, std::ostream& out) {
  emit(out_path, report_text(kv), out);
  if (!json_path.empty()) write_file(json_path, j.dump(2) + "\n");
}

TorqueTrace load_trace(const std::string& path) {
  std::istringstream is(read_file(path));
  try {
    return read_trace_csv(is);
  } catch (const CsvError& e) {
    throw CsvError(e.line(), path + ": " + std::string(e.what()));
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& from_config) {
  if (from_config) return *from_config;
  if (const char* env = std::getenv("EACL_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view s(env);
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
      throw ConfigError(0, "EACL_SEED", "not a non-negative integer");
    return seed;
  }
  throw ConfigError(0, "synthetic.seed", "no seed given (use --seed, the config or EACL_SEED)");
}

// ---------------------------------------------------------------------------

int cmd_sim(const CommonOptions& common, const std::string& out_path, std::ostream& out) {
  const RunConfig config = load_config(common);
  const TorqueTrace trace = run_program(config.program, config.model, config.bench, config.dt);
  std::ostringstream ss;
  write_trace_csv(ss, trace);
  emit(out_path, ss.str(), out);
  return kExitOk;
}

int cmd_sweep_voltage(const CommonOptions& common, const std::string& out_dir,
                      std::ostream& out) {
  const RunConfig config = load_config(common);
  const auto volts = voltage_grid(config.sweep.v_min, config.sweep.v_max, config.sweep.v_step);
  for (double f : config.sweep.frequencies) {
    const auto torque = steady_torque_curve(config.model, f, volts, Execution::parallel);
    SteadyDataset curve{f, {}};
    for (std::size_t i = 0; i < volts.size(); ++i) curve.points.push_back({volts[i], torque[i]});
    std::ostringstream ss;
    write_steady_csv(ss, curve);
    const std::filesystem::path path = std::filesystem::path(out_dir) / ("sweep_" + frequency_tag(f) + ".csv");
    write_file(path, ss.str());
    out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_fit_steady(const CommonOptions& common, const std::string& input, double frequency,
                   const std::string& out_path, const std::string& json_path, std::ostream& out) {
  const RunConfig config = load_config(common);
  std::istringstream is(read_file(input));
  const SteadyDataset data = read_steady_csv(is, frequency > 0.0 ? frequency : config.fit.frequency);
  const auto rep = fit_ac_steady(data, config.model.geometry, config.model.stack);

  std::vector<std::pair<std::string, std::string>> kv{
      {"kind", "steady"},
      {"frequency_Hz", format_number(data.frequency)},
      {"K", format_number(rep.params.gain_K)},
      {"n1", format_number(rep.params.exponent_n1)},
      {"c_V", format_number(rep.params.sat_voltage_c)},
      {"delta", format_number(rep.params.sharpness_delta)}};
  json j{{"kind", "steady"},
         {"frequency_Hz", data.frequency},
         {"params",
          {{"K", rep.params.gain_K},
           {"n1", rep.params.exponent_n1},
           {"c_V", rep.params.sat_voltage_c},
           {"delta", rep.params.sharpness_delta}}}};
  append_fit_common(kv, j, rep);
  emit_report(kv, j, out_path, json_path, out);
  return kExitOk;
}

int cmd_fit_transient(const CommonOptions& common, const std::string& input,
                      std::optional<double> steady_value, double frequency,
                      const std::string& out_path, const std::string& json_path,
                      std::ostream& out) {
  const RunConfig config = load_config(common);
  const TorqueTrace trace = load_trace(input);
  if (!steady_value) steady_value = config.fit.steady_value;
  if (!steady_value) {
    const auto window = activation_window(trace);
    if (window.empty()) throw InputError(input + ": trace has no activation");
    const double f = frequency > 0.0 ? frequency : config.fit.frequency;
    steady_value = ring_torque(ac_steady_shear(window.front().v_command, config.model.ac_params(f),
                                               config.model.stack, config.model.voltage_limit),
                               config.model.geometry);
  }
  TransientFitOptions opts;
  opts.tau2_guess = config.fit.tau2_guess;
  const auto rep = fit_transient(trace, *steady_value, opts);

  std::vector<std::pair<std::string, std::string>> kv{
      {"kind", "transient"},
      {"steady_value_Nm", format_number(*steady_value)},
      {"alpha", format_number(rep.params.alpha)},
      {"tau_1_s", format_number(rep.params.tau_1)},
      {"tau_2_s", format_number(rep.params.tau_2)},
      {"tau_2_identifiable", rep.secondary_identifiable ? "true" : "false"}};
  json j{{"kind", "transient"},
         {"steady_value_Nm", *steady_value},
         {"params", {{"alpha", rep.params.alpha}, {"tau_1_s", rep.params.tau_1}, {"tau_2_s", rep.params.tau_2}}},
         {"tau_2_identifiable", rep.secondary_identifiable}};
  append_fit_common(kv, j, rep);
  emit_report(kv, j, out_path, json_path, out);
  return kExitOk;
}

int cmd_fit_dc(const CommonOptions& common, const std::vector<std::string>& inputs,
               const std::vector<double>& voltages, double frequency, const std::string& out_path,
               const std::string& json_path, std::ostream& out) {
  const RunConfig config = load_config(common);
  if (voltages.size() != inputs.size())
    throw ConfigError(0, "--voltage", "give one --voltage per --input trace");
  std::vector<DcRun> runs;
  for (std::size_t i = 0; i < inputs.size(); ++i) runs.push_back({load_trace(inputs[i]), voltages[i]});
  const double f = frequency > 0.0 ? frequency : config.model.dc_base_frequency;
  DcFitOptions opts;
  opts.tau_d_guess = config.fit.tau_d_guess;
  opts.fixed_n2 = config.fit.fixed_n2;
  const auto rep = fit_dc(runs, config.model.geometry, config.model.stack, config.model.ac_params(f),
                          config.model.transient, opts);

  std::vector<std::pair<std::string, std::string>> kv{
      {"kind", "dc"},
      {"base_frequency_Hz", format_number(f)},
      {"tau_d_s", format_number(rep.params.tau_d)},
      {"n2", format_number(rep.params.exponent_n2)},
      {"Cs", format_number(rep.params.coeff_Cs)},
      {"n2_identifiable", rep.secondary_identifiable ? "true" : "false"}};
  json j{{"kind", "dc"},
         {"base_frequency_Hz", f},
         {"params", {{"tau_d_s", rep.params.tau_d}, {"n2", rep.params.exponent_n2}, {"Cs", rep.params.coeff_Cs}}},
         {"n2_identifiable", rep.secondary_identifiable}};
  append_fit_common(kv, j, rep);
  emit_report(kv, j, out_path, json_path, out);
  return kExitOk;
}

int cmd_gen_synthetic(const CommonOptions& common, std::optional<std::uint64_t> seed_flag,
                      std::optional<double> noise_flag, const std::string& out_dir,
                      std::ostream& out) {
  RunConfig config = load_config(common);
  if (seed_flag) config.synthetic.seed = seed_flag;
  if (noise_flag) config.synthetic.noise_std = *noise_flag;
  const SyntheticConfig& syn = config.synthetic;
  const std::uint64_t seed = resolve_seed(syn.seed);
  const std::filesystem::path dir(out_dir);
  std::vector<std::filesystem::path> written;

  switch (syn.kind) {
    case SyntheticConfig::Kind::steady: {
      if (syn.points < 2) throw ConfigError(0, "synthetic.points", "need at least 2 points");
      const auto volts = linspace(syn.v_min, syn.v_max, static_cast<std::size_t>(syn.points));
      for (double v : volts)
        if (v < 0.0 || v > config.model.voltage_limit) throw VoltageOutOfDomain(v, config.model.voltage_limit);
      const auto data = make_steady_dataset(config.model.ac_params(syn.frequency), config.model.geometry,
                                            config.model.stack, volts, syn.noise_std, seed);
      std::ostringstream ss;
      write_steady_csv(ss, data);
      written.push_back(dir / ("steady_" + frequency_tag(syn.frequency) + ".csv"));
      write_file(written.back(), ss.str());
      break;
    }
    case SyntheticConfig::Kind::transient:
    case SyntheticConfig::Kind::dc: {
      const bool ac = syn.kind == SyntheticConfig::Kind::transient;
      BenchConfig bench = config.bench;
      bench.demand.reset();
      for (std::size_t i = 0; i < syn.voltages.size(); ++i) {
        const double v = syn.voltages[i];
        const Signal sig = ac ? Signal::ac(v, syn.frequency) : Signal::dc(v);
        const auto clean = run_program(single_activation(sig, syn.t_on, syn.t_off, syn.duration),
                                       config.model, bench, config.dt);
        const auto noisy = add_noise(clean, syn.noise_std, seed + i);
        std::ostringstream ss;
        write_trace_csv(ss, noisy);
        const std::string name = ac ? "transient_" + frequency_tag(syn.frequency) + "_" : "dc_";
        written.push_back(dir / (name + format_number(v) + "V.csv"));
        write_file(written.back(), ss.str());
      }
      break;
    }
  }
  for (const auto& p : written) out << p.string() << '\n';
  return kExitOk;
}

int cmd_hri(const CommonOptions& common, const std::string& out_path,
            const std::string& report_path, std::ostream& out) {
  const RunConfig config = load_config(common);
  const HriResult result = run_scenario(config.hri, config.model);
  std::ostringstream ss;
  write_hri_csv(ss, result.trace);
  if (out_path.empty())
    throw ConfigError(0, "--out", "hri needs an output path for the trace");
  write_file(out_path, ss.str());
  emit(report_path,
       report_text({{"torque_rmse_Nm", format_number(result.metrics.torque_rmse)},
                    {"steady_state_error_Nm", format_number(result.metrics.steady_state_error)},
                    {"peak_desired_Nm", format_number(result.metrics.peak_desired)},
                    {"samples", std::to_string(result.trace.rows.size())}}),
       out);
  return kExitOk;
}

int cmd_depolarize_demo(const CommonOptions& common, const std::string& out_path,
                        std::ostream& out) {
  const RunConfig config = load_config(common);
  ActivationProgram program = config.program;
  if (program.segments.empty()) program = single_activation(Signal::dc(300.0), 10.0, 190.0, 250.0);
  BenchConfig bench = config.bench;
  bench.demand.reset();

  const SimRun first = run_program_from(ClutchState{}, program, config.model, bench, config.dt);
  const ClutchState reset = depolarize(first.final_state, config.depolarize_duration,
                                       config.depolarize_amplitude, config.model);
  const SimRun second = run_program_from(reset, program, config.model, bench, config.dt);

  const auto peak = [](const TorqueTrace& t) {
    double m = 0.0;
    for (const auto& r : t.rows) m = std::max(m, r.capacity);
    return m;
  };
  emit(out_path,
       report_text({{"degradation_before", format_number(first.final_state.accumulated_degradation)},
                    {"residual_torque_before_Nm",
                     format_number(first.trace.rows.empty() ? 0.0 : first.trace.rows.back().capacity)},
                    {"depolarize_duration_s", format_number(config.depolarize_duration)},
                    {"depolarize_amplitude_V", format_number(config.depolarize_amplitude)},
                    {"degradation_after", format_number(reset.accumulated_degradation)},
                    {"peak_torque_first_run_Nm", format_number(peak(first.trace))},
                    {"peak_torque_second_run_Nm", format_number(peak(second.trace))}}),
       out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electroadhesive clutch simulation and identification lab", "eacl"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_path, out_dir = ".", json_path, input, report_path;
  std::vector<std::string> inputs;
  std::vector<double> voltages;
  double frequency = 0.0;
  std::optional<double> steady_value, noise_std;
  std::optional<std::uint64_t> seed;

  auto* sim = app.add_subcommand("sim", "Simulate an activation program on the bench");
  add_common(sim, common);
  sim->add_option("-o,--out", out_path, "Trace CSV (default stdout)");

  auto* sweep = app.add_subcommand("sweep-voltage", "Steady torque vs voltage per frequency");
  add_common(sweep, common);
  sweep->add_option("--out-dir", out_dir, "Directory for sweep_<f>Hz.csv files");

  auto* fit_steady = app.add_subcommand("fit-steady", "Identify steady AC parameters");
  add_common(fit_steady, common);
  fit_steady->add_option("-i,--input", input, "Steady CSV (v_V,torque_Nm)")->required();
  fit_steady->add_option("--frequency", frequency, "Activation frequency of the data, Hz");
  fit_steady->add_option("-o,--out", out_path, "Report file (default stdout)");
  fit_steady->add_option("--json", json_path, "Machine-readable report");

  auto* fit_transient_cmd = app.add_subcommand("fit-transient", "Identify the activation envelope");
  add_common(fit_transient_cmd, common);
  fit_transient_cmd->add_option("-i,--input", input, "Trace CSV")->required();
  fit_transient_cmd->add_option("--steady-value", steady_value, "Settled torque, N*m");
  fit_transient_cmd->add_option("--frequency", frequency, "AC frequency for the default steady value");
  fit_transient_cmd->add_option("-o,--out", out_path, "Report file (default stdout)");
  fit_transient_cmd->add_option("--json", json_path, "Machine-readable report");

  auto* fit_dc_cmd = app.add_subcommand("fit-dc", "Identify DC degradation parameters");
  add_common(fit_dc_cmd, common);
  fit_dc_cmd->add_option("-i,--input", inputs, "DC trace CSV (repeatable)")->required();
  fit_dc_cmd->add_option("--voltage", voltages, "DC voltage of each trace, in order")->required();
  fit_dc_cmd->add_option("--frequency", frequency, "AC parameter set the DC law multiplies");
  fit_dc_cmd->add_option("-o,--out", out_path, "Report file (default stdout)");
  fit_dc_cmd->add_option("--json", json_path, "Machine-readable report");

  auto* gen = app.add_subcommand("gen-synthetic", "Generate noisy synthetic datasets");
  add_common(gen, common);
  gen->add_option("--seed", seed, "RNG seed (default: config, then EACL_SEED)");
  gen->add_option("--noise-std", noise_std, "Gaussian noise std, N*m");
  gen->add_option("--out-dir", out_dir, "Output directory");

  auto* hri = app.add_subcommand("hri", "Closed-loop haptic rendering simulation");
  add_common(hri, common);
  hri->add_option("-o,--out", out_path, "HRI trace CSV")->required();
  hri->add_option("--report", report_path, "Metrics report (default stdout)");

  auto* depol = app.add_subcommand("depolarize-demo", "DC run, AC depolarization, DC rerun");
  add_common(depol, common);
  depol->add_option("-o,--out", out_path, "Report file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (sim->parsed()) return cmd_sim(common, out_path, out);
    if (sweep->parsed()) return cmd_sweep_voltage(common, out_dir, out);
    if (fit_steady->parsed())
      return cmd_fit_steady(common, input, frequency, out_path, json_path, out);
    if (fit_transient_cmd->parsed())
      return cmd_fit_transient(common, input, steady_value, frequency, out_path, json_path, out);
    if (fit_dc_cmd->parsed())
      return cmd_fit_dc(common, inputs, voltages, frequency, out_path, json_path, out);
    if (gen->parsed()) return cmd_gen_synthetic(common, seed, noise_std, out_dir, out);
    if (hri->parsed()) return cmd_hri(common, out_path, report_path, out);
    if (depol->parsed()) return cmd_depolarize_demo(common, out_path, out);
  } catch (const ModelDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitModelDomain;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace eacl
