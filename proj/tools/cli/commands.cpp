#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"
#include "config.hpp"
#include "nmd/channels.hpp"
#include "nmd/correlations.hpp"
#include "nmd/errors.hpp"
#include "nmd/io.hpp"
#include "nmd/kernel.hpp"
#include "nmd/scenarios.hpp"
#include "nmd/verification.hpp"

namespace nmd::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::string dump_config;
  double a = 1.0, A = 1.0, gamma = 1.0;
  std::string channel_a, channel_b;
  std::string c, family, family_param, rho;
  int family_sign = 1;
  double t_max = 10.0;
  std::size_t t_steps = 2000;
  bool markovian = false, oracle = false;
  std::string out, format;
  unsigned threads = 0;

  int figure_id = 0;
  std::string panel;

  double ode_step = 0.005;
  double convolution_step = 0.0025;
  std::string inject = "none";
  std::size_t states = 500;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "INI config file (flags override it)");
  sub->add_option("--dump-config", f.dump_config, "Write the resolved config to this file");
  sub->add_option("--a", f.a, "Markovian decay rate a");
  sub->add_option("--A", f.A, "Kernel amplitude A");
  sub->add_option("--gamma", f.gamma, "Kernel decay rate gamma");
  sub->add_option("--channel-a", f.channel_a, "Channel on qubit A: bitflip|bitphase|phaseflip");
  sub->add_option("--channel-b", f.channel_b, "Channel on qubit B: bitflip|bitphase|phaseflip");
  sub->add_option("--c", f.c, "Initial Bell coefficients c_x,c_y,c_z");
  sub->add_option("--family", f.family, "Initial family: synchronized|proportional|sudden_change");
  sub->add_option("--family-param", f.family_param, "Family parameter x (sudden_change: c_x,c_y)");
  sub->add_option("--family-sign", f.family_sign, "Sign branch of the family (+1 or -1)");
  sub->add_option("--rho", f.rho, "Density matrix JSON file ({\"re\": 4x4, \"im\": 4x4})");
  sub->add_option("--t-max", f.t_max, "Grid end in units of 1/a");
  sub->add_option("--t-steps", f.t_steps, "Number of grid points");
  sub->add_flag("--markovian", f.markovian, "Use the Markovian decay exp(-2at)");
  sub->add_flag("--oracle", f.oracle, "Add brute-force cross-checks to the output");
  sub->add_option("--out", f.out, "Output file ('-' for stdout)");
  sub->add_option("--format", f.format, "Output format: csv|json|text");
  sub->add_option("--threads", f.threads, "Worker threads (0 = available parallelism)");
}

bool given(const CLI::App* sub, const char* name) { return sub->count(name) > 0; }

RunConfig resolve_config(const CLI::App* sub, const Flags& f) {
  RunConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw IoError("cannot read config file " + f.config_path);
    load_config(in, config);
  }
  if (given(sub, "--a")) config.kernel.a = f.a;
  if (given(sub, "--A")) config.kernel.A = f.A;
  if (given(sub, "--gamma")) config.kernel.gamma = f.gamma;
  if (given(sub, "--channel-a")) config.channel_a = parse_channel(f.channel_a);
  if (given(sub, "--channel-b")) config.channel_b = parse_channel(f.channel_b);
  if (given(sub, "--c") && given(sub, "--family"))
    throw std::invalid_argument("give either --c or --family, not both");
  if (given(sub, "--c")) {
    config.c = parse_triple(f.c);
    config.family.reset();
  }
  if (given(sub, "--family")) {
    config.family = parse_family(f.family);
    config.c.reset();
  }
  if (given(sub, "--family-param")) config.family_param = f.family_param;
  if (given(sub, "--family-sign")) config.family_sign = f.family_sign;
  if (given(sub, "--rho")) config.rho_path = f.rho;
  if (given(sub, "--t-max")) config.grid.t_max = f.t_max;
  if (given(sub, "--t-steps")) config.grid.points = f.t_steps;
  if (given(sub, "--markovian")) config.markovian = f.markovian;
  if (given(sub, "--oracle")) config.oracle = f.oracle;
  if (given(sub, "--out")) config.out = f.out;
  if (given(sub, "--format")) config.format = parse_format(f.format);
  if (given(sub, "--threads")) config.threads = f.threads;
  config.validate();

  if (!f.dump_config.empty()) {
    std::ofstream dump(f.dump_config);
    if (!dump) throw IoError("cannot write config file " + f.dump_config);
    save_config(dump, config);
    if (!dump) throw IoError("failed writing config file " + f.dump_config);
  }
  return config;
}

/// Grid in physical time; the CLI takes t_max in units of 1/a.
TimeGrid physical_grid(const RunConfig& config) {
  return TimeGrid{config.grid.t_max / config.kernel.a, config.grid.points};
}

std::vector<std::string> config_meta(const RunConfig& config, const char* command) {
  std::vector<std::string> meta{std::string("command=") + command,
                                "a=" + format_number(config.kernel.a),
                                "A=" + format_number(config.kernel.A),
                                "gamma=" + format_number(config.kernel.gamma),
                                std::string("channel_a=") + channel_name(config.channel_a),
                                std::string("channel_b=") + channel_name(config.channel_b)};
  if (config.has_state()) {
    const BellCoefficients c = config.initial_state();
    meta.push_back("c=" + format_number(c.cx) + "," + format_number(c.cy) + "," + format_number(c.cz));
  }
  meta.push_back("t_max=" + format_number(config.grid.t_max));
  meta.push_back("t_steps=" + std::to_string(config.grid.points));
  meta.push_back(std::string("markovian=") + (config.markovian ? "true" : "false"));
  return meta;
}

/// Writes through `fn` to the configured destination.
template <typename Fn>
void emit(const std::string& path, std::ostream& stdout_stream, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(stdout_stream);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file " + path);
  fn(file);
  file.flush();
  if (!file) throw IoError("failed writing output file " + path);
}

void emit_table(const RunConfig& config, const Table& table, std::ostream& out) {
  const OutputFormat format = config.format.value_or(OutputFormat::csv);
  if (format == OutputFormat::text) throw std::invalid_argument("tables support csv or json output");
  emit(config.out, out, [&](std::ostream& os) {
    format == OutputFormat::json ? write_json(os, table) : write_csv(os, table);
  });
}

BellCoefficients checked_initial_state(const RunConfig& config) {
  const BellCoefficients c = config.initial_state();
  require_physical(c);
  return c;
}

int cmd_evolve(const RunConfig& config, std::ostream& out) {
  const BellCoefficients c0 = checked_initial_state(config);
  const TimeGrid grid = physical_grid(config);
  const DecayModel decay{config.kernel, config.markovian};

  Table table;
  table.title = "evolve";
  table.meta = config_meta(config, "evolve");
  table.columns = {"a_t", "p", "c_x", "c_y", "c_z",
                   "lambda_psi_plus", "lambda_phi_plus", "lambda_phi_minus", "lambda_psi_minus"};
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double t = grid.at(i);
    const double p = decay(t);
    const BellCoefficients c = evolve_bell(c0, config.channel_a, config.channel_b, p);
    const BellSpectrum l = bell_eigenvalues(c);
    table.rows.push_back({t * config.kernel.a, p, c.cx, c.cy, c.cz, l[0], l[1], l[2], l[3]});
  }
  emit_table(config, table, out);
  return kExitOk;
}

int cmd_trajectory(const RunConfig& config, std::ostream& out) {
  const BellCoefficients c0 = checked_initial_state(config);
  TrajectoryOptions opts;
  opts.channel_a = config.channel_a;
  opts.channel_b = config.channel_b;
  opts.threads = config.threads;
  const Trajectory traj = trajectory(c0, config.kernel, physical_grid(config), opts);

  Table table;
  table.title = "trajectory";
  table.meta = config_meta(config, "trajectory");
  table.columns = {"a_t", "p", "c_x", "c_y", "c_z", "I", "C", "D", "lambda_max",
                   "p_markov", "I_markov", "C_markov", "D_markov"};
  for (const auto& pt : traj) {
    // --markovian swaps the baseline into the primary columns.
    const bool m = config.markovian;
    const auto& r = m ? pt.markov : pt.report;
    const auto& c = m ? pt.c_markov : pt.c;
    table.rows.push_back({pt.t * config.kernel.a, m ? pt.p_markov : pt.p, c.cx, c.cy, c.cz,
                          r.mutual_information, r.classical, r.discord, r.lambda_max, pt.p_markov,
                          pt.markov.mutual_information, pt.markov.classical, pt.markov.discord});
  }
  emit_table(config, table, out);
  return kExitOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_correlations(const RunConfig& config, std::ostream& out) {
  CorrelationReport report;
  std::string path;
  DensityMatrix rho;
  if (!config.rho_path.empty()) {
    if (config.has_state()) throw std::invalid_argument("give either --rho or --c/--family");
    rho = density_from_json(read_file(config.rho_path));
    const StateDiagnostics diag = validate_state(rho);
    if (!diag.valid()) throw StateError("invalid density matrix: " + diag.describe());
    const BellProjection proj = density_to_bell(rho);
    if (proj.residual <= 1e-9) {
      path = "bell-diagonal";
      report = discord(proj.coefficients);
    } else {
      path = "general";
      BruteForceOptions opts;
      opts.threads = config.threads;
      report = general_correlations(rho, opts);
    }
  } else {
    const BellCoefficients c = checked_initial_state(config);
    rho = bell_to_density(c);
    path = "bell-diagonal";
    report = discord(c);
  }

  double brute = 0.0, red = 0.0;
  if (config.oracle) {
    BruteForceOptions opts;
    opts.threads = config.threads;
    brute = classical_correlation_bruteforce(rho, opts).classical;
    if (path == "bell-diagonal") red = relative_entropy_discord(density_to_bell(rho).coefficients).value;
  }

  const OutputFormat format = config.format.value_or(OutputFormat::text);
  emit(config.out, out, [&](std::ostream& os) {
    switch (format) {
      case OutputFormat::json: {
        std::string json = report_to_json(report);
        if (config.oracle) {
          json.pop_back();
          json += ", \"C_bruteforce\": " + format_number(brute);
          if (path == "bell-diagonal") json += ", \"relative_entropy_discord\": " + format_number(red);
          json += "}";
        }
        os << json << '\n';
        break;
      }
      case OutputFormat::csv:
        os << report_csv_header() << (config.oracle ? ",C_bruteforce" : "") << '\n'
           << report_csv_row(report) << (config.oracle ? "," + format_number(brute) : "") << '\n';
        break;
      case OutputFormat::text: {
        auto line = [&](const char* key, const std::string& value) {
          os << std::left << std::setw(26) << key << value << '\n';
        };
        line("path", path);
        line("I", format_number(report.mutual_information));
        line("C", format_number(report.classical));
        line("D", format_number(report.discord));
        line("lambda_max", format_number(report.lambda_max));
        line("axis", std::string(1, axis_name(report.dominant_axis)));
        if (config.oracle) {
          line("C_bruteforce", format_number(brute));
          line("|C - C_bruteforce|", format_number(std::abs(report.classical - brute)));
          if (path == "bell-diagonal") line("relative_entropy_discord", format_number(red));
        }
        break;
      }
    }
  });
  return kExitOk;
}

int cmd_tc(const RunConfig& config, std::ostream& out) {
  const BellCoefficients c0 = checked_initial_state(config);
  std::optional<double> t_c;
  if (config.markovian) {
    if (std::abs(std::abs(c0.cz) - std::abs(c0.cx)) > 1e-12)
      throw std::invalid_argument("characteristic time needs |c_z| = |c_x|");
    if (c0.cx != 0.0 && std::abs(c0.cx) < std::abs(c0.cy))
      t_c = solve_p_equals(DecayModel{config.kernel, true}, std::abs(c0.cx) / std::abs(c0.cy));
  } else {
    try {
      t_c = characteristic_time(c0, config.kernel);
    } catch (const NotFoundError&) {
      t_c.reset();
    }
  }

  std::optional<double> kink;
  if (config.oracle && t_c && !config.markovian) {
    TrajectoryOptions opts;
    opts.threads = config.threads;
    kink = detect_kink(trajectory(c0, config.kernel, physical_grid(config), opts));
  }

  const double a = config.kernel.a;
  const OutputFormat format = config.format.value_or(OutputFormat::text);
  emit(config.out, out, [&](std::ostream& os) {
    const std::string value = t_c ? format_number(*t_c * a) : "none";
    if (format == OutputFormat::json) {
      os << "{\"a_t_c\": " << (t_c ? value : "null");
      if (config.oracle) os << ", \"a_t_kink\": " << (kink ? format_number(*kink * a) : "null");
      os << "}\n";
    } else if (format == OutputFormat::csv) {
      os << "a_t_c" << (config.oracle ? ",a_t_kink" : "") << '\n' << value;
      if (config.oracle) os << ',' << (kink ? format_number(*kink * a) : "none");
      os << '\n';
    } else {
      os << "a*t_c = " << value << '\n';
      if (config.oracle) os << "kink at a*t = " << (kink ? format_number(*kink * a) : "none") << '\n';
    }
  });
  return kExitOk;
}

FigurePanel parse_panel(const std::string& panel) {
  if (panel == "a") return FigurePanel::a;
  if (panel == "b") return FigurePanel::b;
  if (panel == "c") return FigurePanel::c;
  throw std::invalid_argument("unknown panel '" + panel + "'");
}

std::string plot_script(const Table& table, int id, FigurePanel panel, const std::string& data_file) {
  std::ostringstream gp;
  gp << "# gnuplot script for " << table.title << "\n"
     << "set datafile separator ','\n"
     << "set key top right\n";
  const std::string src = "'" + data_file + "'";
  if (panel == FigurePanel::c) {
    gp << "set xlabel 'c_y'\nset ylabel 'a t_c'\n"
       << "plot " << src << " using 1:2 every ::1 with lines lw 2 title 't_c'\n";
    return gp.str();
  }
  gp << "set xlabel 'a t'\nset ylabel 'correlations (bits)'\n";
  if (id == 1) {
    gp << "plot " << src << " using 1:5 every ::1 with lines lw 2 lc rgb 'black' title 'D = C', \\\n"
       << "     " << src << " using 1:7 every ::1 with lines dt 3 lc rgb 'black' title 'D = C (Markovian)'\n";
  } else {
    gp << "plot " << src << " using 1:5 every ::1 with lines lw 2 lc rgb 'black' title 'D', \\\n"
       << "     " << src << " using 1:4 every ::1 with lines dt 2 lc rgb 'black' title 'C', \\\n"
       << "     " << src << " using 1:7 every ::1 with lines lw 1 lc rgb 'gray' title 'D (Markovian)', \\\n"
       << "     " << src << " using 1:6 every ::1 with lines dt 2 lc rgb 'gray' title 'C (Markovian)'\n";
  }
  return gp.str();
}

int cmd_figure(const RunConfig& config, const CLI::App* sub, int id, const std::string& panel_name,
               std::ostream& out) {
  if (id < 1 || id > 3) throw std::invalid_argument("figure id must be 1, 2 or 3");
  const FigurePanel panel = parse_panel(panel_name);
  std::optional<TimeGrid> grid;
  if (given(sub, "--t-max") || given(sub, "--t-steps")) {
    TimeGrid g = default_figure_grid(panel);
    if (given(sub, "--t-max")) g.t_max = config.grid.t_max;
    if (given(sub, "--t-steps")) g.points = config.grid.points;
    grid = g;
  }
  const Table table = figure_data(id, panel, grid, config.threads);

  RunConfig target = config;
  if (target.out.empty())
    target.out = "figure" + std::to_string(id) + panel_name +
                 (config.format == OutputFormat::json ? ".json" : ".csv");
  emit_table(target, table, out);

  if (target.out != "-") {
    std::filesystem::path script = target.out;
    script.replace_extension(".gp");
    const std::string data_name = std::filesystem::path(target.out).filename().string();
    emit(script.string(), out, [&](std::ostream& os) { os << plot_script(table, id, panel, data_name); });
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& config, const Flags& f, std::ostream& out) {
  VerifyOptions opts;
  opts.ode_step = f.ode_step;
  opts.convolution_step = f.convolution_step;
  opts.correlation_states = f.states;
  opts.threads = config.threads;
  if (f.inject == "flipped-spectrum")
    opts.inject_flipped_spectrum = true;
  else if (f.inject != "none")
    throw std::invalid_argument("unknown fault '" + f.inject + "' (expected none or flipped-spectrum)");

  const VerifyReport report = run_verification(opts);
  emit(config.out, out, [&](std::ostream& os) {
    for (const auto& c : report.checks) {
      os << (c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(50) << c.name
         << " max discrepancy " << format_number(c.discrepancy) << " (tolerance "
         << format_number(c.tolerance) << ")";
      if (!c.detail.empty()) os << "  [" << c.detail << "]";
      os << '\n';
    }
  });
  for (const auto& c : report.checks)
    if (!c.passed) throw VerificationFailed("verification check failed: " + c.name);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation dynamics of Bell-diagonal states under local non-Markovian Pauli channels", "nmd"};
  app.require_subcommand(1);
  Flags f;

  auto* evolve = app.add_subcommand("evolve", "Tabulate p(t), c(t) and the Bell weights");
  auto* correlations = app.add_subcommand("correlations", "Mutual information, classical correlation, discord");
  auto* traj = app.add_subcommand("trajectory", "Correlations along the time grid");
  auto* figure = app.add_subcommand("figure", "Emit a figure table and gnuplot script");
  auto* tc = app.add_subcommand("tc", "Characteristic time of the sudden change");
  auto* verify = app.add_subcommand("verify", "Run the oracle cross-check suite");
  for (auto* sub : {evolve, correlations, traj, figure, tc, verify}) add_common(sub, f);
  figure->add_option("id", f.figure_id, "Figure number (1, 2, 3)")->required();
  figure->add_option("panel", f.panel, "Panel (a, b; c for figure 3)")->required();
  verify->add_option("--ode-step", f.ode_step, "ODE oracle step in units of 1/a");
  verify->add_option("--convolution-step", f.convolution_step, "Convolution oracle step in units of 1/a");
  verify->add_option("--inject", f.inject, "Fault injection: none|flipped-spectrum");
  verify->add_option("--states", f.states, "Random states for the correlation checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    const RunConfig config = resolve_config(sub, f);
    if (sub == evolve) return cmd_evolve(config, out);
    if (sub == correlations) return cmd_correlations(config, out);
    if (sub == traj) return cmd_trajectory(config, out);
    if (sub == figure) return cmd_figure(config, sub, f.figure_id, f.panel, out);
    if (sub == tc) return cmd_tc(config, out);
    return cmd_verify(config, f, out);
  } catch (const VerificationFailed& e) {
    err << "nmd: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const IoError& e) {
    err << "nmd: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    err << "nmd: invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "nmd: invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "nmd: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

}  // namespace nmd::cli
