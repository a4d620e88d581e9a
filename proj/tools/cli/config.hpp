#pragma once

// Run configuration shared by all nmd subcommands, with an INI-style file
// form (sections kernel, channels, state, grid, output, run).

#include <iosfwd>
#include <optional>
#include <string>

#include "nmd/channels.hpp"
#include "nmd/kernel.hpp"
#include "nmd/scenarios.hpp"
#include "nmd/state.hpp"

namespace nmd::cli {

enum class OutputFormat { csv, json, text };

struct RunConfig {
  KernelParams kernel{1.0, 1.0, 1.0};
  PauliAxis channel_a = Axis::x;
  PauliAxis channel_b = Axis::z;

  std::optional<BellCoefficients> c;
  std::optional<FamilyKind> family;
  std::string family_param;  // "x" or "c_x,c_y"
  int family_sign = +1;
  std::string rho_path;

  TimeGrid grid{10.0, 2000};

  std::string out;
  std::optional<OutputFormat> format;

  bool markovian = false;
  bool oracle = false;
  unsigned threads = 0;

  /// Throws std::invalid_argument on any invalid field.
  void validate() const;

  /// The initial Bell coefficients from --c or --family. Throws
  /// std::invalid_argument if neither is set.
  BellCoefficients initial_state() const;
  bool has_state() const { return c.has_value() || family.has_value(); }
};

/// Parses "x,y,z".
BellCoefficients parse_triple(const std::string& text);
OutputFormat parse_format(const std::string& text);
const char* format_name(OutputFormat format);

/// Overlays keys present in the INI file onto `config`.
void load_config(std::istream& is, RunConfig& config);
void save_config(std::ostream& os, const RunConfig& config);

}  // namespace nmd::cli
