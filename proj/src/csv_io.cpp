#include "eacl/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace eacl {

std::string format_number(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.9g", x == 0.0 ? 0.0 : x);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_trace_csv(std::ostream& os, const TorqueTrace& trace) {
  os << kTraceHeader << '\n';
  for (const auto& r : trace.rows)
    os << format_number(r.t) << ',' << format_number(r.v_command) << ','
       << format_number(r.capacity) << ',' << format_number(r.transmitted) << ','
       << format_number(r.slip_speed) << '\n';
}

void write_steady_csv(std::ostream& os, const SteadyDataset& data) {
  os << kSteadyHeader << '\n';
  for (const auto& p : data.points) os << format_number(p.v) << ',' << format_number(p.torque_mean) << '\n';
}

void write_hri_csv(std::ostream& os, const HriTrace& trace) {
  os << kHriHeader << '\n';
  for (const auto& r : trace.rows) {
    os << format_number(r.t) << ',' << format_number(r.theta) << ',' << format_number(r.theta_dot)
       << ',' << format_number(r.desired_torque) << ',' << format_number(r.rendered_torque) << ','
       << format_number(r.v_command) << ',' << format_number(r.capacity) << ',';
    if (r.rendered_stiffness) os << format_number(*r.rendered_stiffness);
    os << '\n';
  }
}

namespace {

std::vector<double> parse_row(std::string_view line, std::size_t expected, std::size_t lineno) {
  std::vector<double> out;
  out.reserve(expected);
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string_view field = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size())
      throw CsvError(lineno, "field " + std::to_string(out.size() + 1) + " is not a number: '" +
                                 std::string(field) + "'");
    if (!std::isfinite(value))
      throw CsvError(lineno, "field " + std::to_string(out.size() + 1) + " is not finite");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected)
    throw CsvError(lineno, "expected " + std::to_string(expected) + " fields, found " +
                               std::to_string(out.size()));
  return out;
}

template <class OnRow>
void read_csv(std::istream& is, std::string_view header, std::size_t columns, OnRow on_row) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(is, line)) throw CsvError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw CsvError(1, "unexpected header '" + line + "', want '" + std::string(header) + "'");
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    on_row(parse_row(line, columns, lineno), lineno);
  }
}

}  // namespace

TorqueTrace read_trace_csv(std::istream& is) {
  TorqueTrace trace;
  read_csv(is, kTraceHeader, 5, [&](const std::vector<double>& f, std::size_t lineno) {
    if (!trace.rows.empty() && !(f[0] > trace.rows.back().t))
      throw CsvError(lineno, "time column must be strictly increasing");
    trace.rows.push_back({f[0], f[1], f[2], f[3], f[4]});
  });
  if (trace.rows.size() >= 2) trace.dt = trace.rows[1].t - trace.rows[0].t;
  return trace;
}

SteadyDataset read_steady_csv(std::istream& is, double frequency) {
  SteadyDataset data;
  data.frequency = frequency;
  read_csv(is, kSteadyHeader, 2, [&](const std::vector<double>& f, std::size_t) {
    data.points.push_back({f[0], f[1]});
  });
  return data;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot open " + tmp.string() + " for writing");
    os << contents;
    if (!os) throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace eacl
