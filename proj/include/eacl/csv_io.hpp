#pragma once

// CSV serialization for traces and steady datasets. Numbers are written with
// 9 significant digits and '.' as the decimal point; every row ends in '\n'.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "eacl/clutch_sim.hpp"
#include "eacl/errors.hpp"
#include "eacl/hri_sim.hpp"
#include "eacl/identification.hpp"

namespace eacl {

inline constexpr std::string_view kTraceHeader = "t_s,v_cmd_V,capacity_Nm,transmitted_Nm,slip_rad_s";
inline constexpr std::string_view kSteadyHeader = "v_V,torque_Nm";
inline constexpr std::string_view kHriHeader =
    "t_s,theta_rad,theta_dot_rad_s,desired_Nm,rendered_Nm,v_cmd_V,capacity_Nm,stiffness_Nm_rad";

class CsvError : public InputError {
 public:
  CsvError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_number(double x);

void write_trace_csv(std::ostream& os, const TorqueTrace& trace);
void write_steady_csv(std::ostream& os, const SteadyDataset& data);
void write_hri_csv(std::ostream& os, const HriTrace& trace);

// Throws CsvError naming the offending line (1-based, header is line 1).
TorqueTrace read_trace_csv(std::istream& is);
SteadyDataset read_steady_csv(std::istream& is, double frequency = 0.0);

// Writes via a temporary file and renames, so readers never see partial output.
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace eacl
