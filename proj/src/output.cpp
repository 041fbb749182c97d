#include "seisctl/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seisctl/config_io.hpp"
#include "seisctl/units.hpp"

#ifndef SEISCTL_VERSION
#define SEISCTL_VERSION "unknown"
#endif

namespace seisctl {

std::string format_fixed17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_number(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error(context + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

}  // namespace

std::string timeseries_header(const std::vector<TimeSeriesRecord>& records) {
  if (records.empty()) throw std::invalid_argument("time series needs at least one record");
  const auto& r0 = records.front();
  std::string h = "t_hr";
  for (Eigen::Index i = 0; i < r0.h.size(); ++i) h += ",R" + std::to_string(i + 1);
  for (Eigen::Index i = 0; i < r0.r.size(); ++i) h += ",r" + std::to_string(i + 1);
  for (Eigen::Index i = 0; i < r0.q_fixed.size(); ++i) h += ",Qs" + std::to_string(i + 1);
  for (Eigen::Index i = 0; i < r0.q_applied.size(); ++i) h += ",Qc" + std::to_string(i + 1);
  for (Eigen::Index i = 0; i < r0.demand.size(); ++i) h += ",D" + std::to_string(i + 1);
  h += ",ye_norm";
  return h;
}

std::string timeseries_csv(const std::vector<TimeSeriesRecord>& records) {
  std::string out = timeseries_header(records) + "\n";
  const auto& r0 = records.front();
  for (const auto& rec : records) {
    if (rec.h.size() != r0.h.size() || rec.r.size() != r0.r.size() || rec.q_fixed.size() != r0.q_fixed.size() ||
        rec.q_applied.size() != r0.q_applied.size() || rec.demand.size() != r0.demand.size()) {
      throw std::invalid_argument("time series records have inconsistent widths");
    }
    out += format_fixed17(rec.t);
    for (Eigen::Index i = 0; i < rec.h.size(); ++i) out += "," + format_fixed17(std::exp(rec.h(i)));
    for (Eigen::Index i = 0; i < rec.r.size(); ++i) out += "," + format_fixed17(rec.r(i));
    for (Eigen::Index i = 0; i < rec.q_fixed.size(); ++i) out += "," + format_fixed17(rec.q_fixed(i));
    for (Eigen::Index i = 0; i < rec.q_applied.size(); ++i) out += "," + format_fixed17(rec.q_applied(i));
    for (Eigen::Index i = 0; i < rec.demand.size(); ++i) out += "," + format_fixed17(rec.demand(i));
    out += "," + format_fixed17(rec.error_norm) + "\n";
  }
  return out;
}

void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, const std::filesystem::path& path) {
  write_text(path, timeseries_csv(records));
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (table.columns.empty()) {
      table.columns = std::move(cells);
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                               " fields, expected " + std::to_string(table.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, "csv line " + std::to_string(line_no)));
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw std::runtime_error("csv has no header");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

std::string field_snapshot_text(const FieldSnapshot& snapshot, double length) {
  const auto ny = snapshot.grid.rows();
  const auto nx = snapshot.grid.cols();
  if (nx == 0 || ny == 0) throw std::invalid_argument("snapshot grid is empty");
  std::string out;
  out += "# t_hr=" + format_fixed17(snapshot.t) + "\n";
  out += "# nx=" + std::to_string(nx) + " ny=" + std::to_string(ny) + "\n";
  out += "# D_km=" + format_fixed17(length) + "\n";
  out += "# units=MPa\n";
  for (Eigen::Index j = 0; j < ny; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      if (i) out += ' ';
      out += format_fixed17(snapshot.grid(j, i));
    }
    out += '\n';
  }
  return out;
}

void write_field_snapshot(const FieldSnapshot& snapshot, double length, const std::filesystem::path& path) {
  write_text(path, field_snapshot_text(snapshot, length));
}

SnapshotFile read_field_snapshot(const std::filesystem::path& path) {
  std::stringstream ss(read_text(path));
  std::string l1, l2, l3, l4;
  std::getline(ss, l1);
  std::getline(ss, l2);
  std::getline(ss, l3);
  std::getline(ss, l4);
  const std::string ctx = path.string();
  if (l1.rfind("# t_hr=", 0) != 0 || l2.rfind("# nx=", 0) != 0 || l3.rfind("# D_km=", 0) != 0 ||
      l4 != "# units=MPa") {
    throw std::runtime_error(ctx + ": malformed snapshot header");
  }
  SnapshotFile snap;
  snap.t = parse_number(std::string_view(l1).substr(7), ctx);
  const auto ny_pos = l2.find(" ny=");
  if (ny_pos == std::string::npos) throw std::runtime_error(ctx + ": malformed grid size line");
  const auto nx = static_cast<Eigen::Index>(parse_number(std::string_view(l2).substr(5, ny_pos - 5), ctx));
  const auto ny = static_cast<Eigen::Index>(parse_number(std::string_view(l2).substr(ny_pos + 4), ctx));
  snap.length = parse_number(std::string_view(l3).substr(7), ctx);
  snap.grid.resize(ny, nx);
  std::string line;
  for (Eigen::Index j = 0; j < ny; ++j) {
    if (!std::getline(ss, line)) throw std::runtime_error(ctx + ": too few grid rows");
    std::stringstream ls(line);
    std::string cell;
    Eigen::Index i = 0;
    while (ls >> cell) {
      if (i >= nx) throw std::runtime_error(ctx + ": too many values in a grid row");
      snap.grid(j, i++) = parse_number(cell, ctx);
    }
    if (i != nx) throw std::runtime_error(ctx + ": too few values in a grid row");
  }
  return snap;
}

std::string run_manifest_json(const ScenarioConfig& cfg, const SimulationResult& result, const RunInfo& info) {
  nlohmann::ordered_json j;
  j["name"] = cfg.name;
  j["code_version"] = SEISCTL_VERSION;
  j["schema_version"] = cfg.schema_version;
  j["config_path"] = info.config_path;
  j["started_utc"] = info.started_utc;
  j["status"] = to_string(result.status);
  if (!result.message.empty()) j["message"] = result.message;
  j["final_time_hr"] = result.final_time;
  j["horizon_hr"] = cfg.output.horizon;
  j["heterogeneity"] = {{"enabled", cfg.heterogeneity.enabled}, {"seed", cfg.heterogeneity.seed}};
  nlohmann::ordered_json integ = {{"method", to_string(cfg.integrator.method)}};
  if (cfg.integrator.method == IntegratorMethod::kRk4) {
    integ["dt_hr"] = cfg.integrator.dt;
  } else {
    integ["rtol"] = cfg.integrator.rtol;
    integ["atol"] = cfg.integrator.atol;
    integ["max_step_hr"] = cfg.integrator.max_step;
    integ["min_step_hr"] = cfg.integrator.min_step;
  }
  integ["accepted_steps"] = result.accepted_steps;
  integ["rejected_steps"] = result.rejected_steps;
  integ["rhs_evaluations"] = result.rhs_evaluations;
  j["integrator"] = integ;
  if (cfg.control.enabled) {
    j["control"] = {{"exponent", cfg.control.gains.exponent},
                    {"nominal_bias", cfg.control.nominal_bias},
                    {"sign_regularization_epsilon", cfg.control.sign_epsilon},
                    {"sign_regularization", cfg.control.sign_epsilon > 0.0},
                    {"hold_period_hr", cfg.control.hold_period},
                    {"nominal_condition_number", result.nominal_condition}};
  }
  if (cfg.demand.active()) j["max_demand_residual_m3_per_hr"] = result.max_demand_residual;
  j["unit_conversions"] = {{"m3_to_km3", units::kKm3PerM3},
                           {"hours_per_month", units::kHoursPerMonth},
                           {"hours_per_year", units::kHoursPerYear},
                           {"canonical", "km, hr, MPa; fluxes in m3/hr"}};
  j["wall_clock_seconds"] = result.wall_seconds;
  j["records"] = result.records.size();
  j["snapshots"] = result.snapshots.size();
  j["config"] = format_config(cfg);
  return j.dump(2) + "\n";
}

void write_run_outputs(const ScenarioConfig& cfg, const SimulationResult& result, const RunInfo& info,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "snapshots");
  if (!result.records.empty()) write_timeseries_csv(result.records, dir / "timeseries.csv");
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "u_%03zu.txt", k);
    write_field_snapshot(result.snapshots[k], cfg.physics.length, dir / "snapshots" / name);
  }
  write_text(dir / "config.resolved.cfg", format_config(cfg));
  write_text(dir / "manifest.json", run_manifest_json(cfg, result, info));
}

}  // namespace seisctl
