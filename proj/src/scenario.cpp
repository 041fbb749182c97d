#include "seisctl/scenario.hpp"

#include <cmath>
#include <string>

#include "seisctl/errors.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

const char* to_string(DemandKind kind) {
  switch (kind) {
    case DemandKind::kNone: return "none";
    case DemandKind::kConstant: return "constant";
    case DemandKind::kSquareWave: return "square_wave";
  }
  return "unknown";
}

const char* to_string(IntegratorMethod method) {
  switch (method) {
    case IntegratorMethod::kRk23: return "rk23";
    case IntegratorMethod::kRk4: return "rk4";
  }
  return "unknown";
}

Eigen::VectorXd DemandSchedule::at(double t) const {
  switch (kind) {
    case DemandKind::kNone: return Eigen::VectorXd();
    case DemandKind::kConstant: return value;
    case DemandKind::kSquareWave: {
      const double phase = t - std::floor(t / period) * period;
      return phase < duty * period ? value : off_value;
    }
  }
  return Eigen::VectorXd();
}

std::vector<double> DemandSchedule::switch_times(double horizon) const {
  std::vector<double> out;
  if (kind != DemandKind::kSquareWave) return out;
  for (long k = 0;; ++k) {
    const double start = static_cast<double>(k) * period;
    if (start >= horizon) break;
    if (start > 0.0) out.push_back(start);
    const double off = start + duty * period;
    if (off > 0.0 && off < horizon && duty > 0.0 && duty < 1.0) out.push_back(off);
  }
  return out;
}

bool operator==(const DemandSchedule& a, const DemandSchedule& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == DemandKind::kNone) return true;
  const bool wave_equal = a.kind != DemandKind::kSquareWave ||
                          (a.off_value == b.off_value && a.period == b.period && a.duty == b.duty);
  return a.weights.rows() == b.weights.rows() && a.weights.cols() == b.weights.cols() && a.weights == b.weights &&
         a.value.size() == b.value.size() && a.value == b.value && wave_equal;
}

IntegratorMethod default_integrator_method(double exponent) {
  return exponent <= -1.0 ? IntegratorMethod::kRk4 : IntegratorMethod::kRk23;
}

namespace {

bool same_shape_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool interior(Point p, double length) { return p.x > 0.0 && p.x < length && p.y > 0.0 && p.y < length; }

}  // namespace

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  const bool control_equal = a.control.enabled == b.control.enabled &&
                             same_shape_equal(a.control.gains.k1, b.control.gains.k1) &&
                             same_shape_equal(a.control.gains.k2, b.control.gains.k2) &&
                             a.control.gains.exponent == b.control.gains.exponent &&
                             a.control.nominal_bias == b.control.nominal_bias &&
                             a.control.sign_epsilon == b.control.sign_epsilon &&
                             a.control.hold_period == b.control.hold_period;
  return a.schema_version == b.schema_version && a.name == b.name && a.physics == b.physics &&
         a.basis_modes_per_axis == b.basis_modes_per_axis && a.basis_modes == b.basis_modes &&
         a.fixed_wells == b.fixed_wells && same_shape_equal(a.fixed_fluxes, b.fixed_fluxes) &&
         a.control_wells == b.control_wells && a.regions == b.regions && control_equal &&
         same_shape_equal(a.reference.target, b.reference.target) && a.reference.ramp == b.reference.ramp &&
         a.demand == b.demand && a.heterogeneity == b.heterogeneity && a.integrator == b.integrator &&
         a.output == b.output;
}

std::vector<std::string> ScenarioConfig::issues() const {
  std::vector<std::string> out;
  auto check = [&out](bool ok, std::string message) {
    if (!ok) out.push_back(std::move(message));
  };

  check(schema_version == 1, "schema_version must be 1");
  try {
    physics.validate();
  } catch (const DomainError& e) {
    out.emplace_back(std::string("physics: ") + e.what());
  }
  const double L = physics.length;

  check(basis_modes_per_axis >= 1, "basis.modes_per_axis must be at least 1");
  check(basis_modes >= 1 && basis_modes <= basis_modes_per_axis * basis_modes_per_axis,
        "basis.modes must lie in [1, modes_per_axis^2]");

  check(fixed_fluxes.size() == static_cast<Eigen::Index>(fixed_wells.size()),
        "every fixed well needs exactly one flux");
  for (std::size_t j = 0; j < fixed_wells.size(); ++j) {
    check(interior(fixed_wells[j], L), "fixed well " + std::to_string(j + 1) + " must lie strictly inside the reservoir");
  }
  for (std::size_t j = 0; j < control_wells.size(); ++j) {
    check(interior(control_wells[j], L),
          "control well " + std::to_string(j + 1) + " must lie strictly inside the reservoir");
  }
  for (Eigen::Index j = 0; j < fixed_fluxes.size(); ++j) {
    check(std::isfinite(fixed_fluxes(j)), "fixed flux " + std::to_string(j + 1) + " must be finite");
  }

  check(!regions.empty(), "at least one region is required");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    try {
      regions[i].validate(L);
      check(regions[i].area() > 0.0, "region " + std::to_string(i + 1) + " must have positive area");
    } catch (const DomainError& e) {
      out.emplace_back("region " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  const Eigen::Index mc = tracked();
  const Eigen::Index mr = demand.constraints();
  if (control.enabled) {
    check(static_cast<Eigen::Index>(control_wells.size()) == mc + mr,
          "controlled runs need one control well per region plus one per demand constraint (" +
              std::to_string(mc + mr) + " expected, " + std::to_string(control_wells.size()) + " given)");
    check(control.gains.k1.rows() == mc && control.gains.k1.cols() == mc, "control.k1 must have one entry per region");
    check(control.gains.k2.rows() == mc && control.gains.k2.cols() == mc, "control.k2 must have one entry per region");
    if (control.gains.k1.rows() == mc && control.gains.k2.rows() == mc && mc > 0) {
      try {
        control.gains.validate();
      } catch (const DomainError& e) {
        out.emplace_back(std::string("control: ") + e.what());
      }
    }
    check(control.nominal_bias > 0.0 && std::isfinite(control.nominal_bias), "control.nominal_bias must be positive");
    check(control.sign_epsilon >= 0.0, "control.sign_epsilon must be non-negative");
    check(control.hold_period >= 0.0, "control.hold_period must be non-negative");
    check(reference.target.size() == mc, "reference target needs one value per region");
    check(reference.ramp > 0.0, "reference.ramp must be positive");
  } else {
    check(!demand.active(), "a demand schedule requires control.enabled = true");
  }

  if (demand.active()) {
    check(demand.weights.rows() >= 1 && demand.weights.cols() == demand.weights.rows() + mc,
          "demand.weights must be m_r x (m_c + m_r)");
    check(demand.value.size() == demand.weights.rows(), "demand.value needs one entry per constraint row");
    if (demand.weights.rows() >= 1 && demand.weights.cols() > demand.weights.rows()) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(demand.weights);
      check(lu.rank() == demand.weights.rows(), "demand.weights must have full row rank");
    }
    if (demand.kind == DemandKind::kSquareWave) {
      check(demand.off_value.size() == demand.weights.rows(), "demand.off_value needs one entry per constraint row");
      check(demand.period > 0.0, "demand.period must be positive");
      check(demand.duty > 0.0 && demand.duty < 1.0, "demand.duty must lie in (0, 1)");
    }
  }

  if (heterogeneity.enabled) {
    check(heterogeneity.range_decades >= 0.0, "heterogeneity.range_decades must be non-negative");
    check(heterogeneity.beta_range_decades >= 0.0, "heterogeneity.beta_range_decades must be non-negative");
    check(heterogeneity.mean_ratio > 0.0, "heterogeneity.mean_ratio must be positive");
    check(heterogeneity.quadrature_panels >= 1, "heterogeneity.quadrature_panels must be at least 1");
  }

  check(integrator.rtol > 0.0 && integrator.atol > 0.0, "integrator tolerances must be positive");
  check(integrator.max_step > 0.0, "integrator.max_step must be positive");
  check(integrator.min_step > 0.0 && integrator.min_step < integrator.max_step,
        "integrator.min_step must be positive and below max_step");
  check(integrator.dt > 0.0, "integrator.dt must be positive");

  check(output.horizon > 0.0, "output.horizon must be positive");
  check(output.cadence > 0.0, "output.cadence must be positive");
  check(output.snapshot_nx >= 2 && output.snapshot_ny >= 2, "snapshot grids need at least 2 points per axis");
  for (double t : output.snapshot_times) {
    check(t >= 0.0 && t <= output.horizon, "snapshot time " + std::to_string(t) + " hr lies outside [0, horizon]");
  }
  return out;
}

void ScenarioConfig::validate() const {
  auto found = issues();
  if (!found.empty()) throw ConfigError(std::move(found));
}

std::vector<RegionSpec> default_regions() {
  RegionSpec v1{{RectRegion{1.0, 4.0, 1.0, 4.0, +1}, RectRegion{2.0, 3.0, 2.0, 3.0, -1}}};
  RegionSpec v2{{RectRegion{2.0, 3.0, 2.0, 3.0, +1}}};
  return {v1, v2};
}

ScenarioConfig builtin_scenario(int index) {
  constexpr double month = units::kHoursPerMonth;
  ScenarioConfig cfg;
  cfg.name = "scenario" + std::to_string(index);
  cfg.fixed_wells = {Point{2.5, 2.5}};
  cfg.fixed_fluxes = Eigen::VectorXd::Constant(1, 32.0);
  cfg.regions = default_regions();
  cfg.reference.target = Eigen::Vector2d(0.0, std::log(5.0));
  cfg.reference.ramp = month;
  cfg.control.gains.k1 = Eigen::Vector2d(1.5e-2, 6.7e-2).asDiagonal();
  cfg.control.gains.k2 = Eigen::Vector2d(1.1e-4, 2.2e-3).asDiagonal();
  cfg.control.gains.exponent = -0.6;
  cfg.output.cadence = 24.0;

  switch (index) {
    case 0:
      cfg.control.enabled = false;
      cfg.control.gains = ControllerGains{};
      cfg.control_wells = {};
      cfg.output.horizon = 36 * month;
      cfg.output.snapshot_times = {0.0, 6 * month, 12 * month, 24 * month, 36 * month};
      break;
    case 1:
      cfg.control.enabled = true;
      cfg.control_wells = {Point{1.25, 2.5}, Point{2.75, 2.5}};
      cfg.output.horizon = 6 * month;
      cfg.output.cadence = 6.0;
      cfg.output.snapshot_times = {0.0, month, 3 * month, 6 * month};
      break;
    case 2:
    case 3:
      cfg.control.enabled = true;
      cfg.control_wells = {Point{1.25, 2.5}, Point{2.5, 1.25}, Point{2.75, 2.5}};
      cfg.demand.weights = Eigen::RowVector3d(1.0, 1.01, 1.0);
      cfg.demand.value = Eigen::VectorXd::Constant(1, -32.0);
      if (index == 2) {
        cfg.demand.kind = DemandKind::kConstant;
        cfg.output.horizon = 6 * month;
        cfg.output.cadence = 6.0;
        cfg.output.snapshot_times = {0.0, month, 3 * month, 6 * month};
      } else {
        cfg.demand.kind = DemandKind::kSquareWave;
        cfg.demand.off_value = Eigen::VectorXd::Zero(1);
        cfg.demand.period = 2 * month;
        cfg.demand.duty = 0.5;
        cfg.output.horizon = 48 * month;
        cfg.output.snapshot_times = {0.0, 6 * month, 12 * month, 24 * month, 48 * month};
      }
      break;
    case 4:
      cfg.control.enabled = true;
      cfg.control_wells = {Point{1.25, 2.5}, Point{2.75, 2.5}};
      cfg.heterogeneity.enabled = true;
      cfg.output.horizon = 48 * month;
      cfg.output.snapshot_times = {0.0, 6 * month, 12 * month, 36 * month, 48 * month};
      break;
    default:
      throw DomainError("built-in scenarios are numbered 0 to 4");
  }
  cfg.integrator.method = default_integrator_method(cfg.control.gains.exponent);
  return cfg;
}

}  // namespace seisctl
