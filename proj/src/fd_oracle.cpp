#include "seisctl/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "seisctl/errors.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

namespace {

double overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

struct Load {
  std::vector<std::pair<std::size_t, double>> cells;  // cell index, weight per m^3/hr of flux
};

Load bilinear_load(Point p, int n, double h, double scale) {
  auto axis = [&](double v, int& i0, double& frac) {
    const double f = v / h - 0.5;
    i0 = std::clamp(static_cast<int>(std::floor(f)), 0, n - 2);
    frac = std::clamp(f - i0, 0.0, 1.0);
  };
  int i0 = 0, j0 = 0;
  double tx = 0.0, ty = 0.0;
  axis(p.x, i0, tx);
  axis(p.y, j0, ty);
  Load load;
  const double w[2][2] = {{(1 - tx) * (1 - ty), (1 - tx) * ty}, {tx * (1 - ty), tx * ty}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto idx = static_cast<std::size_t>(j0 + b) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i0 + a);
      load.cells.emplace_back(idx, scale * w[a][b]);
    }
  }
  return load;
}

}  // namespace

FdResult fd_reference_solve(const ScenarioConfig& cfg, const FdOptions& options) {
  std::unique_ptr<HeterogeneityField> field;
  if (cfg.heterogeneity.enabled) {
    field = std::make_unique<HeterogeneityField>(generate_heterogeneity(cfg.heterogeneity, cfg.physics.length));
  }
  return fd_reference_solve(cfg, field.get(), options);
}

FdResult fd_reference_solve(const ScenarioConfig& cfg, const HeterogeneityField* field, const FdOptions& options) {
  cfg.validate();
  const int n = options.cells;
  if (n < 4) throw DomainError("finite-difference grid needs at least 4 cells per axis");
  const double L = cfg.physics.length;
  const double h = L / n;
  const auto N = static_cast<std::size_t>(n);

  auto c_at = [&](double x, double y) {
    return cfg.physics.c_hy * (field ? field->diffusivity_ratio({x, y}) : 1.0);
  };
  auto beta_at = [&](Point p) { return cfg.physics.beta * (field ? field->compressibility_ratio(p) : 1.0); };

  // cx(i, j): face between cells (i-1, j) and (i, j), i = 0..n; boundary faces included.
  std::vector<double> cx((N + 1) * N), cy(N * (N + 1));
  double c_max = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i <= N; ++i) {
      const double v = c_at(static_cast<double>(i) * h, (static_cast<double>(j) + 0.5) * h);
      cx[j * (N + 1) + i] = v;
      c_max = std::max(c_max, v);
    }
  }
  for (std::size_t j = 0; j <= N; ++j) {
    for (std::size_t i = 0; i < N; ++i) {
      const double v = c_at((static_cast<double>(i) + 0.5) * h, static_cast<double>(j) * h);
      cy[j * N + i] = v;
      c_max = std::max(c_max, v);
    }
  }
  // Gershgorin bound of the explicit Euler amplification, boundary rows included.
  const double dt_limit = h * h / (4.0 * c_max);
  const double dt = options.dt > 0.0 ? options.dt : 0.9 * dt_limit;
  if (dt > dt_limit) {
    throw DomainError("explicit step " + std::to_string(dt) + " hr exceeds the stability limit " +
                      std::to_string(dt_limit) + " hr");
  }

  std::vector<double> source(N * N, 0.0);
  auto add_wells = [&](const std::vector<Point>& wells, const Eigen::VectorXd& fluxes) {
    for (std::size_t w = 0; w < wells.size(); ++w) {
      const double q = fluxes(static_cast<Eigen::Index>(w)) * units::kKm3PerM3;
      const double scale = q / (beta_at(wells[w]) * h * h * cfg.physics.depth);
      for (const auto& [idx, weight] : bilinear_load(wells[w], n, h, scale).cells) source[idx] += weight;
    }
  };
  add_wells(cfg.fixed_wells, cfg.fixed_fluxes);
  if (options.control_fluxes.size() > 0) {
    if (options.control_fluxes.size() != static_cast<Eigen::Index>(cfg.control_wells.size())) {
      throw DomainError("control_fluxes needs one value per control well");
    }
    add_wells(cfg.control_wells, options.control_fluxes);
  }

  // Exact cell-overlap weights for every region mean.
  const auto m = cfg.regions.size();
  std::vector<std::vector<double>> region_weight(m, std::vector<double>(N * N, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    const double area = cfg.regions[r].area();
    for (const RectRegion& rect : cfg.regions[r].rects) {
      for (std::size_t j = 0; j < N; ++j) {
        const double oy = overlap(rect.y_lo, rect.y_hi, static_cast<double>(j) * h, static_cast<double>(j + 1) * h);
        if (oy == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) {
          const double ox =
              overlap(rect.x_lo, rect.x_hi, static_cast<double>(i) * h, static_cast<double>(i + 1) * h);
          region_weight[r][j * N + i] += rect.sign * ox * oy / area;
        }
      }
    }
  }

  std::vector<double> stops = options.output_times;
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  FdResult res;
  res.dt = dt;
  res.region_means = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(stops.size()), static_cast<Eigen::Index>(m));
  std::vector<double> u(N * N, 0.0), du(N * N, 0.0);
  const double inv_h2 = 1.0 / (h * h);

  auto record = [&](double t) {
    const auto row = static_cast<Eigen::Index>(res.times.size());
    for (std::size_t r = 0; r < m; ++r) {
      double acc = 0.0;
      for (std::size_t k = 0; k < N * N; ++k) acc += region_weight[r][k] * u[k];
      res.region_means(row, static_cast<Eigen::Index>(r)) = acc;
    }
    res.times.push_back(t);
  };

  auto step = [&](double tau) {
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t i = 0; i < N; ++i) {
        const double c = u[j * N + i];
        const double w = i > 0 ? u[j * N + i - 1] : -c;
        const double e = i + 1 < N ? u[j * N + i + 1] : -c;
        const double s = j > 0 ? u[(j - 1) * N + i] : -c;
        const double nn = j + 1 < N ? u[(j + 1) * N + i] : -c;
        const double flux = cx[j * (N + 1) + i + 1] * (e - c) - cx[j * (N + 1) + i] * (c - w) +
                            cy[(j + 1) * N + i] * (nn - c) - cy[j * N + i] * (c - s);
        du[j * N + i] = flux * inv_h2 + source[j * N + i];
      }
    }
    for (std::size_t k = 0; k < N * N; ++k) u[k] += tau * du[k];
    ++res.steps;
  };

  double t = 0.0;
  for (double stop : stops) {
    if (stop < 0.0) throw DomainError("output times must be non-negative");
    const double start = t;
    long long i = 0;
    while (t < stop) {
      double t_next = start + static_cast<double>(i + 1) * dt;
      if (t_next > stop || stop - t_next < 1e-9 * dt) t_next = stop;
      step(t_next - t);
      t = t_next;
      ++i;
    }
    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    if (!std::isfinite(peak) || peak > 1e12) {
      throw std::runtime_error("finite-difference solution became unstable at t = " + std::to_string(t) + " hr");
    }
    record(stop);
  }

  res.final_field.resize(n, n);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i) {
      res.final_field(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = u[j * N + i];
    }
  }
  return res;
}

OracleReport oracle_compare(const ScenarioConfig& cfg_in, int cells) {
  ScenarioConfig cfg = cfg_in;
  cfg.control.enabled = false;
  cfg.demand = DemandSchedule{};
  cfg.output.snapshot_times.clear();
  if (cfg.integrator.method == IntegratorMethod::kRk4 && cfg.integrator.dt > cfg.integrator.max_step) {
    cfg.integrator.method = IntegratorMethod::kRk23;
  }
  const ClosedLoopSystem system(cfg);
  const SimulationResult sim = run_scenario(system);
  if (!sim.ok()) throw std::runtime_error("Galerkin run failed: " + sim.message);

  FdOptions opts;
  opts.cells = cells;
  opts.output_times = cadence_times(cfg.output.horizon, cfg.output.cadence);
  const FdResult fd = fd_reference_solve(cfg, system.field().get(), opts);

  OracleReport report;
  report.times = fd.times;
  report.reference = fd.region_means;
  report.dt = fd.dt;
  report.steps = fd.steps;
  report.galerkin.resize(fd.region_means.rows(), fd.region_means.cols());
  if (sim.records.size() != fd.times.size()) throw std::runtime_error("oracle sample grids differ");
  for (std::size_t i = 0; i < sim.records.size(); ++i) {
    report.galerkin.row(static_cast<Eigen::Index>(i)) = sim.records[i].region_pressure.transpose();
  }
  report.relative_l2.resize(report.reference.cols());
  for (Eigen::Index r = 0; r < report.reference.cols(); ++r) {
    const double ref = report.reference.col(r).norm();
    const double diff = (report.galerkin.col(r) - report.reference.col(r)).norm();
    report.relative_l2(r) = ref > 0.0 ? diff / ref : diff;
  }
  return report;
}

}  // namespace seisctl
