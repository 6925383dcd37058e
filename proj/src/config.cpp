#include "eacl/config.hpp"

#include <charconv>
#include <functional>
#include <map>

namespace eacl {

namespace {

struct Field {
  std::size_t line;
  std::string name;  // section.key, for diagnostics
  std::string_view value;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line, name, what); }

  double number() const {
    double x = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (value.empty() || ec != std::errc() || end != value.data() + value.size())
      fail("expected a number, got '" + std::string(value) + "'");
    return x;
  }

  int integer() const {
    int x = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (value.empty() || ec != std::errc() || end != value.data() + value.size())
      fail("expected an integer, got '" + std::string(value) + "'");
    return x;
  }

  std::uint64_t seed() const {
    std::uint64_t x = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (value.empty() || ec != std::errc() || end != value.data() + value.size())
      fail("expected a non-negative integer seed, got '" + std::string(value) + "'");
    return x;
  }

  bool flag() const {
    if (value == "true" || value == "yes" || value == "1" || value == "on") return true;
    if (value == "false" || value == "no" || value == "0" || value == "off") return false;
    fail("expected true/false, got '" + std::string(value) + "'");
  }

  std::vector<std::string_view> words() const {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < value.size()) {
      while (pos < value.size() && (value[pos] == ' ' || value[pos] == ',' || value[pos] == '\t')) ++pos;
      std::size_t end = pos;
      while (end < value.size() && value[end] != ' ' && value[end] != ',' && value[end] != '\t') ++end;
      if (end > pos) out.push_back(value.substr(pos, end - pos));
      pos = end;
    }
    return out;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (auto w : words()) out.push_back(Field{line, name, w}.number());
    return out;
  }
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using Setter = std::function<void(RunConfig&, const Field&)>;
using SectionTable = std::map<std::string, Setter, std::less<>>;

Segment parse_segment(const Field& f) {
  const auto w = f.words();
  if (w.size() < 3) f.fail("segment needs '<start> <end> <kind> ...'");
  auto num = [&](std::size_t i) { return Field{f.line, f.name, w[i]}.number(); };
  Segment seg{num(0), num(1), Signal::off()};
  if (w[2] == "off" && w.size() == 3) return seg;
  if (w[2] == "dc" && w.size() == 4) {
    seg.signal = Signal::dc(num(3));
    return seg;
  }
  if (w[2] == "ac" && w.size() == 5) {
    seg.signal = Signal::ac(num(3), num(4));
    return seg;
  }
  f.fail("segment kind must be 'off', 'dc <V>' or 'ac <V> <Hz>'");
}

const std::map<std::string, SectionTable, std::less<>>& tables() {
  static const std::map<std::string, SectionTable, std::less<>> t = {
      {"model",
       {
           {"r_inner", [](RunConfig& c, const Field& f) { c.model.geometry.r_inner = f.number(); }},
           {"r_outer", [](RunConfig& c, const Field& f) { c.model.geometry.r_outer = f.number(); }},
           {"eps_r", [](RunConfig& c, const Field& f) { c.model.stack.eps_r = f.number(); }},
           {"eps_0", [](RunConfig& c, const Field& f) { c.model.stack.eps_0 = f.number(); }},
           {"thickness_d", [](RunConfig& c, const Field& f) { c.model.stack.thickness_d = f.number(); }},
           {"sigma_0", [](RunConfig& c, const Field& f) { c.model.stack.sigma_0 = f.number(); }},
           {"c_f", [](RunConfig& c, const Field& f) { c.model.stack.c_f = f.number(); }},
           {"voltage_limit", [](RunConfig& c, const Field& f) { c.model.voltage_limit = f.number(); }},
           {"dc_base_frequency", [](RunConfig& c, const Field& f) { c.model.dc_base_frequency = f.number(); }},
           {"alpha", [](RunConfig& c, const Field& f) { c.model.transient.alpha = f.number(); }},
           {"tau_1", [](RunConfig& c, const Field& f) { c.model.transient.tau_1 = f.number(); }},
           {"tau_2", [](RunConfig& c, const Field& f) { c.model.transient.tau_2 = f.number(); }},
           {"tau_d", [](RunConfig& c, const Field& f) { c.model.dc.tau_d = f.number(); }},
           {"n2", [](RunConfig& c, const Field& f) { c.model.dc.exponent_n2 = f.number(); }},
           {"Cs", [](RunConfig& c, const Field& f) { c.model.dc.coeff_Cs = f.number(); }},
       }},
      {"program",
       {
           {"duration", [](RunConfig& c, const Field& f) { c.program.duration = f.number(); }},
           {"segment", [](RunConfig& c, const Field& f) { c.program.segments.push_back(parse_segment(f)); }},
       }},
      {"bench",
       {
           {"rotor_rpm", [](RunConfig& c, const Field& f) { c.bench.rotor_rpm = f.number(); }},
           {"demand",
            [](RunConfig& c, const Field& f) {
              if (f.value == "slipping" || f.value == "always-slipping")
                c.bench.demand.reset();
              else
                c.bench.demand = f.number();
            }},
       }},
      {"sim",
       {
           {"dt", [](RunConfig& c, const Field& f) { c.dt = f.number(); }},
           {"depolarize_duration", [](RunConfig& c, const Field& f) { c.depolarize_duration = f.number(); }},
           {"depolarize_amplitude", [](RunConfig& c, const Field& f) { c.depolarize_amplitude = f.number(); }},
       }},
      {"sweep",
       {
           {"frequencies", [](RunConfig& c, const Field& f) { c.sweep.frequencies = f.numbers(); }},
           {"v_min", [](RunConfig& c, const Field& f) { c.sweep.v_min = f.number(); }},
           {"v_max", [](RunConfig& c, const Field& f) { c.sweep.v_max = f.number(); }},
           {"v_step", [](RunConfig& c, const Field& f) { c.sweep.v_step = f.number(); }},
       }},
      {"synthetic",
       {
           {"kind",
            [](RunConfig& c, const Field& f) {
              if (f.value == "steady")
                c.synthetic.kind = SyntheticConfig::Kind::steady;
              else if (f.value == "transient")
                c.synthetic.kind = SyntheticConfig::Kind::transient;
              else if (f.value == "dc")
                c.synthetic.kind = SyntheticConfig::Kind::dc;
              else
                f.fail("kind must be steady, transient or dc");
            }},
           {"seed", [](RunConfig& c, const Field& f) { c.synthetic.seed = f.seed(); }},
           {"noise_std", [](RunConfig& c, const Field& f) { c.synthetic.noise_std = f.number(); }},
           {"frequency", [](RunConfig& c, const Field& f) { c.synthetic.frequency = f.number(); }},
           {"points", [](RunConfig& c, const Field& f) { c.synthetic.points = f.integer(); }},
           {"v_min", [](RunConfig& c, const Field& f) { c.synthetic.v_min = f.number(); }},
           {"v_max", [](RunConfig& c, const Field& f) { c.synthetic.v_max = f.number(); }},
           {"voltages", [](RunConfig& c, const Field& f) { c.synthetic.voltages = f.numbers(); }},
           {"t_on", [](RunConfig& c, const Field& f) { c.synthetic.t_on = f.number(); }},
           {"t_off", [](RunConfig& c, const Field& f) { c.synthetic.t_off = f.number(); }},
           {"duration", [](RunConfig& c, const Field& f) { c.synthetic.duration = f.number(); }},
       }},
      {"fit",
       {
           {"frequency", [](RunConfig& c, const Field& f) { c.fit.frequency = f.number(); }},
           {"steady_value", [](RunConfig& c, const Field& f) { c.fit.steady_value = f.number(); }},
           {"voltages", [](RunConfig& c, const Field& f) { c.fit.voltages = f.numbers(); }},
           {"tau2_guess", [](RunConfig& c, const Field& f) { c.fit.tau2_guess = f.number(); }},
           {"tau_d_guess", [](RunConfig& c, const Field& f) { c.fit.tau_d_guess = f.number(); }},
           {"fixed_n2", [](RunConfig& c, const Field& f) { c.fit.fixed_n2 = f.number(); }},
       }},
      {"hri",
       {
           {"stiffness", [](RunConfig& c, const Field& f) { c.hri.env_stiffness = f.number(); }},
           {"env_lo", [](RunConfig& c, const Field& f) { c.hri.env_lo = f.number(); }},
           {"env_hi", [](RunConfig& c, const Field& f) { c.hri.env_hi = f.number(); }},
           {"kp", [](RunConfig& c, const Field& f) { c.hri.gains.kp = f.number(); }},
           {"ki", [](RunConfig& c, const Field& f) { c.hri.gains.ki = f.number(); }},
           {"rotor_rpm", [](RunConfig& c, const Field& f) { c.hri.rotor_rpm = f.number(); }},
           {"amplitude", [](RunConfig& c, const Field& f) { c.hri.hand.amplitude = f.number(); }},
           {"period", [](RunConfig& c, const Field& f) { c.hri.hand.period = f.number(); }},
           {"offset", [](RunConfig& c, const Field& f) { c.hri.hand.offset = f.number(); }},
           {"phase", [](RunConfig& c, const Field& f) { c.hri.hand.phase = f.number(); }},
           {"actuator_lag", [](RunConfig& c, const Field& f) { c.hri.actuator_lag = f.number(); }},
           {"dt", [](RunConfig& c, const Field& f) { c.hri.dt = f.number(); }},
           {"duration", [](RunConfig& c, const Field& f) { c.hri.duration = f.number(); }},
           {"release_switch", [](RunConfig& c, const Field& f) { c.hri.release_switch = f.flag(); }},
           {"frequency", [](RunConfig& c, const Field& f) { c.hri.frequency = f.number(); }},
           {"settle_time", [](RunConfig& c, const Field& f) { c.hri.settle_time = f.number(); }},
           {"encoder_counts", [](RunConfig& c, const Field& f) { c.hri.encoder_counts = f.integer(); }},
       }},
  };
  return t;
}

void apply_ac(RunConfig& config, std::string_view freq_text, const Field& f,
              std::string_view key) {
  const double freq = Field{f.line, f.name, freq_text}.number();
  auto [it, inserted] = config.model.ac_by_frequency.try_emplace(freq);
  if (inserted) it->second.frequency = freq;
  AcSteadyParams& p = it->second;
  if (key == "K")
    p.gain_K = f.number();
  else if (key == "n1")
    p.exponent_n1 = f.number();
  else if (key == "c")
    p.sat_voltage_c = f.number();
  else if (key == "delta")
    p.sharpness_delta = f.number();
  else
    f.fail("unknown key");
}

void apply_setting(RunConfig& config, std::string_view section, std::string_view key,
                   std::string_view value, std::size_t line) {
  const Field f{line, std::string(section) + "." + std::string(key), value};
  if (section.starts_with("ac.")) {
    apply_ac(config, section.substr(3), f, key);
    return;
  }
  const auto& all = tables();
  const auto sec = all.find(section);
  if (sec == all.end()) throw ConfigError(line, std::string(section), "unknown section");
  const auto setter = sec->second.find(key);
  if (setter == sec->second.end()) f.fail("unknown key");
  setter->second(config, f);
}

void validate_model(const RunConfig& config) {
  try {
    config.model.validate();
  } catch (const InputError& e) {
    throw ConfigError(0, "model", e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::string section;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = raw.find('#');
    const std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, std::string(line), "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!section.starts_with("ac.") && !tables().contains(section))
        throw ConfigError(lineno, section, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(lineno, std::string(line), "expected key = value");
    if (section.empty()) throw ConfigError(lineno, std::string(trim(line.substr(0, eq))), "key outside a section");
    apply_setting(base, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno);
  }
  validate_model(base);
  return base;
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const std::string_view lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.rfind('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos)
    throw ConfigError(0, std::string(assignment), "override must look like section.key=value");
  apply_setting(config, lhs.substr(0, dot), lhs.substr(dot + 1), trim(assignment.substr(eq + 1)), 0);
  validate_model(config);
}

}  // namespace eacl
