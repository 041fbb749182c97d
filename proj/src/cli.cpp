#include "seisctl/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "seisctl/config_io.hpp"
#include "seisctl/errors.hpp"
#include "seisctl/fd_oracle.hpp"
#include "seisctl/output.hpp"
#include "seisctl/simulation.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream o;
  o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return o.str();
}

void report_config_error(const ConfigError& e, std::ostream& err) {
  err << "error: invalid configuration (" << e.issues().size() << " issue" << (e.issues().size() == 1 ? "" : "s")
      << ")\n";
  for (const auto& issue : e.issues()) err << "  " << issue << "\n";
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ScenarioConfig cfg = parse_config(path);
    out << "ok: " << cfg.name << " (" << cfg.regions.size() << " regions, "
        << (cfg.control.enabled ? "controlled" : "uncontrolled") << ", demand " << to_string(cfg.demand.kind)
        << ", horizon " << cfg.output.horizon / units::kHoursPerMonth << " months)\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    report_config_error(e, err);
    return kExitValidation;
  }
}

int cmd_run(const std::string& path, std::string out_dir, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = parse_config(path);
  } catch (const ConfigError& e) {
    report_config_error(e, err);
    return kExitValidation;
  }
  if (out_dir.empty()) out_dir = "runs/" + cfg.name;
  const RunInfo info{path, utc_now()};
  try {
    const SimulationResult result = run_scenario(cfg);
    write_run_outputs(cfg, result, info, out_dir);
    if (!result.ok()) {
      err << "error: integration stopped at t = " << result.final_time << " hr (" << to_string(result.status)
          << "): " << result.message << "\n"
          << "partial output written to " << out_dir << "\n";
      return kExitRuntime;
    }
    out << "run " << cfg.name << ": " << result.records.size() << " records, " << result.snapshots.size()
        << " snapshots, " << result.accepted_steps << " steps in " << std::setprecision(3) << result.wall_seconds
        << " s -> " << out_dir << "\n";
    if (!result.records.empty()) {
      const auto& last = result.records.back();
      out << "final R =";
      for (Eigen::Index i = 0; i < last.h.size(); ++i) out << ' ' << std::setprecision(6) << std::exp(last.h(i));
      out << ", ||y_e|| = " << last.error_norm << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_oracle(const std::string& path, int cells, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = parse_config(path);
  } catch (const ConfigError& e) {
    report_config_error(e, err);
    return kExitValidation;
  }
  try {
    const OracleReport rep = oracle_compare(cfg, cells);
    out << "oracle " << cfg.name << ": Galerkin (K=" << cfg.basis_modes << ") vs finite differences (n=" << cells
        << ", dt=" << rep.dt << " hr, " << rep.steps << " steps), open loop, controller off\n";
    out << "region,rel_l2,final_galerkin_MPa,final_fd_MPa\n";
    const auto last = rep.reference.rows() - 1;
    for (Eigen::Index r = 0; r < rep.relative_l2.size(); ++r) {
      out << r + 1 << ',' << format_fixed17(rep.relative_l2(r)) << ',' << format_fixed17(rep.galerkin(last, r)) << ','
          << format_fixed17(rep.reference(last, r)) << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_compare(const std::string& a_path, const std::string& b_path, const std::vector<std::string>& cols,
                double rtol, double atol, std::ostream& out, std::ostream& err) {
  CsvTable a, b;
  try {
    a = read_csv(a_path);
    b = read_csv(b_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::vector<std::string> names = cols;
  if (names.empty()) {
    for (const auto& c : a.columns) {
      if (b.column(c) >= 0) names.push_back(c);
    }
  }
  if (a.rows.size() != b.rows.size()) {
    err << "mismatch: " << a.rows.size() << " rows vs " << b.rows.size() << " rows\n";
    return kExitValidation;
  }
  bool ok = true;
  out << "column,max_abs_diff,max_rel_diff\n";
  for (const auto& name : names) {
    const int ia = a.column(name);
    const int ib = b.column(name);
    if (ia < 0 || ib < 0) {
      err << "mismatch: column '" << name << "' missing in " << (ia < 0 ? a_path : b_path) << "\n";
      ok = false;
      continue;
    }
    double max_abs = 0.0, max_rel = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      const double x = a.rows[r][static_cast<std::size_t>(ia)];
      const double y = b.rows[r][static_cast<std::size_t>(ib)];
      const double d = std::abs(x - y);
      const double scale = std::max(std::abs(x), std::abs(y));
      max_abs = std::max(max_abs, d);
      if (scale > 0.0) max_rel = std::max(max_rel, d / scale);
      if (!(d <= atol + rtol * scale)) ok = false;
    }
    out << name << ',' << format_fixed17(max_abs) << ',' << format_fixed17(max_rel) << "\n";
  }
  out << (ok ? "compare: match\n" : "compare: MISMATCH\n");
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-loop simulation and control of injection-induced seismicity", "seisctl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SEISCTL_VERSION);

  std::string cfg_path, out_dir, csv_a, csv_b;
  std::vector<std::string> cols;
  double rtol = 0.0, atol = 0.0;
  int cells = 128;

  auto* run = app.add_subcommand("run", "Integrate a scenario and write its outputs");
  run->add_option("config", cfg_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory (default runs/<name>)");

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("config", cfg_path, "Scenario file")->required();

  auto* oracle = app.add_subcommand("oracle", "Compare the spectral solver with the finite-difference reference");
  oracle->add_option("config", cfg_path, "Scenario file")->required();
  oracle->add_option("--cells", cells, "Finite-difference cells per axis")->check(CLI::Range(4, 4096));

  auto* compare = app.add_subcommand("compare", "Compare two time-series CSV files");
  compare->add_option("a", csv_a, "First CSV")->required();
  compare->add_option("b", csv_b, "Second CSV")->required();
  compare->add_option("--cols", cols, "Columns to compare (default: all shared)")->delimiter(',');
  compare->add_option("--rtol", rtol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  compare->add_option("--atol", atol, "Absolute tolerance")->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*run) return cmd_run(cfg_path, out_dir, out, err);
  if (*validate) return cmd_validate(cfg_path, out, err);
  if (*oracle) return cmd_oracle(cfg_path, cells, out, err);
  if (*compare) return cmd_compare(csv_a, csv_b, cols, rtol, atol, out, err);
  return kExitValidation;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace seisctl
