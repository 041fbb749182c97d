#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seisctl/controller.hpp"
#include "seisctl/heterogeneity.hpp"
#include "seisctl/reservoir.hpp"
#include "seisctl/spectral_basis.hpp"

namespace seisctl {

enum class DemandKind { kNone, kConstant, kSquareWave };

const char* to_string(DemandKind kind);

/**
 * @brief Piecewise-constant demand D(t) on the weighted sum W Qbar_c.
 *
 * A square wave starts in its "on" phase at `value` for duty * period hours,
 * then switches to `off_value` for the rest of the period.
 */
struct DemandSchedule {
  DemandKind kind = DemandKind::kNone;
  Eigen::MatrixXd weights;    // W, m_r x (m_c + m_r)
  Eigen::VectorXd value;      // m^3/hr, constant level or on-phase level
  Eigen::VectorXd off_value;  // m^3/hr, square-wave off-phase level
  double period = 1460.0;     // hr
  double duty = 0.5;

  bool active() const { return kind != DemandKind::kNone; }
  Eigen::Index constraints() const { return active() ? weights.rows() : 0; }
  /// Right-continuous: at a switch instant the new level is returned.
  Eigen::VectorXd at(double t) const;
  /// Switch instants in (0, horizon).
  std::vector<double> switch_times(double horizon) const;

  friend bool operator==(const DemandSchedule& a, const DemandSchedule& b);
};

enum class IntegratorMethod { kRk23, kRk4 };

const char* to_string(IntegratorMethod method);

struct IntegratorSettings {
  IntegratorMethod method = IntegratorMethod::kRk23;
  double rtol = 1e-6;
  double atol = 1e-9;
  double max_step = 10.0;  // hr
  double min_step = 1e-10; // hr
  double dt = 0.05;        // hr, fixed-step RK4

  friend bool operator==(const IntegratorSettings&, const IntegratorSettings&) = default;
};

/// RK4 at dt = 0.05 hr for the discontinuous l = -1 law, RK23 otherwise.
IntegratorMethod default_integrator_method(double exponent);

struct ControlSettings {
  bool enabled = false;
  ControllerGains gains;
  double nominal_bias = 1.1;
  double sign_epsilon = 0.0;  // 0 keeps the exact sign function
  double hold_period = 0.0;   // hr, zero-order hold on the fluxes; 0 = continuous

  friend bool operator==(const ControlSettings&, const ControlSettings&) = default;
};

struct OutputSettings {
  double horizon = 36 * 730.0;  // hr
  double cadence = 24.0;        // hr
  std::vector<double> snapshot_times;  // hr
  int snapshot_nx = 51;
  int snapshot_ny = 51;

  friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name = "scenario";
  PhysicalParams physics;
  int basis_modes_per_axis = 16;
  int basis_modes = 160;
  std::vector<Point> fixed_wells;
  Eigen::VectorXd fixed_fluxes;  // m^3/hr
  std::vector<Point> control_wells;
  std::vector<RegionSpec> regions;
  ControlSettings control;
  ReferenceSpec reference;
  DemandSchedule demand;
  HeterogeneitySpec heterogeneity;
  IntegratorSettings integrator;
  OutputSettings output;

  /// Number of tracked regions, m_c.
  Eigen::Index tracked() const { return static_cast<Eigen::Index>(regions.size()); }

  /// Every violated constraint, empty when the configuration is usable.
  std::vector<std::string> issues() const;
  /// Throws ConfigError listing all issues.
  void validate() const;

  friend bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);
};

/// Geometry shared by the shipped scenarios: V2 = [2,3]^2, V1 = [1,4]^2 \ V2.
std::vector<RegionSpec> default_regions();

/**
 * @brief Built-in scenario definitions.
 *
 * 0: uncontrolled fixed injection, 36 months.
 * 1: tracking without demand, 6 months.
 * 2: tracking with constant demand -32 m^3/hr, 6 months.
 * 3: tracking with a square-wave demand between -32 and 0 m^3/hr, 48 months.
 * 4: scenario 1 in the heterogeneous reservoir, 48 months.
 */
ScenarioConfig builtin_scenario(int index);

}  // namespace seisctl
