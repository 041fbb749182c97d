#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seisctl/scenario.hpp"
#include "seisctl/simulation.hpp"

namespace seisctl {

/// 17 significant digits, locale independent, so text reads back bit-exactly.
std::string format_fixed17(double v);

/// Header `t_hr,R1..Rm,r1..rm,Qs1..,Qc1..,D1..,ye_norm`. The r columns hold
/// the reference log-rates; D columns are present only with a demand.
std::string timeseries_header(const std::vector<TimeSeriesRecord>& records);
std::string timeseries_csv(const std::vector<TimeSeriesRecord>& records);
void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column, or -1.
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

/// Four header lines (t_hr, nx ny, D_km, units) followed by ny rows of nx values.
std::string field_snapshot_text(const FieldSnapshot& snapshot, double length);
void write_field_snapshot(const FieldSnapshot& snapshot, double length, const std::filesystem::path& path);

struct SnapshotFile {
  double t = 0.0;
  double length = 0.0;
  Eigen::MatrixXd grid;
};
SnapshotFile read_field_snapshot(const std::filesystem::path& path);

struct RunInfo {
  std::string config_path;
  std::string started_utc;
};

/// JSON manifest: resolved config echo, version, seed, integrator settings,
/// unit conversions, timings and termination status.
std::string run_manifest_json(const ScenarioConfig& cfg, const SimulationResult& result, const RunInfo& info);

/**
 * @brief Writes timeseries.csv, snapshots/u_<k>.txt, config.resolved.cfg and
 * manifest.json into `dir`, creating it if needed.
 */
void write_run_outputs(const ScenarioConfig& cfg, const SimulationResult& result, const RunInfo& info,
                       const std::filesystem::path& dir);

}  // namespace seisctl
