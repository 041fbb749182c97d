#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seisctl/controller.hpp"
#include "seisctl/heterogeneity.hpp"
#include "seisctl/integrators.hpp"
#include "seisctl/reservoir.hpp"
#include "seisctl/scenario.hpp"
#include "seisctl/spectral_basis.hpp"

namespace seisctl {

/// Everything the controller produces at one instant.
struct ControlAction {
  Eigen::VectorXd r;          // reference log-rate
  Eigen::VectorXd rdot;
  Eigen::VectorXd error;      // y_e = h - r
  Eigen::VectorXd q_control;  // controller output Q_c, m^3/hr (m_c)
  Eigen::VectorXd q_applied;  // fluxes at the control wells, Q_c or Qbar_c, m^3/hr
  Eigen::VectorXd demand;     // D(t), m^3/hr (empty without demand)
};

/**
 * @brief Augmented closed-loop ODE in the state x = [z (K), h (m_c), nu (m_c)].
 *
 * The right-hand side evaluates, in order: r(t), y_e = h - r, Q_c from the
 * control law, Qbar_c from the demand allocation, zdot, the region mean
 * pressure rates, hdot and nudot. The controller only reads (h, nu, t).
 */
class ClosedLoopSystem {
 public:
  explicit ClosedLoopSystem(const ScenarioConfig& cfg);

  const ScenarioConfig& config() const { return cfg_; }
  const SpectralBasis& basis() const { return basis_; }
  const ModalDiffusion& dynamics() const { return dynamics_; }
  const Eigen::MatrixXd& averaging() const { return averaging_; }
  const std::optional<NominalModel>& nominal() const { return nominal_; }
  const std::optional<DemandConstraint>& constraint() const { return constraint_; }
  const std::shared_ptr<const HeterogeneityField>& field() const { return field_; }

  Eigen::Index modes() const { return static_cast<Eigen::Index>(basis_.size()); }
  Eigen::Index tracked() const { return cfg_.tracked(); }
  Eigen::Index state_size() const { return modes() + 2 * tracked(); }
  Eigen::VectorXd initial_state() const { return Eigen::VectorXd::Zero(state_size()); }

  Eigen::VectorXd modal(const Eigen::VectorXd& x) const { return x.head(modes()); }
  Eigen::VectorXd log_rates(const Eigen::VectorXd& x) const { return x.segment(modes(), tracked()); }
  Eigen::VectorXd integral(const Eigen::VectorXd& x) const { return x.tail(tracked()); }

  /// Controller output from the measured output h and integral state nu only.
  /// With control disabled the fluxes are zero; the reference is still filled.
  ControlAction control_action(double t, const Eigen::VectorXd& h, const Eigen::VectorXd& nu) const;

  /// Zero-order hold: later rhs calls apply these fluxes instead of the
  /// continuous law until release_hold().
  void hold(const Eigen::VectorXd& q_applied) { held_ = q_applied; }
  void release_hold() { held_.reset(); }
  bool holding() const { return held_.has_value(); }

  void rhs(double t, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) const;

 private:
  ScenarioConfig cfg_;
  SpectralBasis basis_;
  std::shared_ptr<const HeterogeneityField> field_;
  ModalDiffusion dynamics_;
  Eigen::MatrixXd averaging_;
  std::optional<NominalModel> nominal_;
  std::optional<DemandConstraint> constraint_;
  std::optional<Eigen::VectorXd> held_;
};

struct TimeSeriesRecord {
  double t = 0.0;
  Eigen::VectorXd h;          // log seismicity rates, R = exp(h)
  Eigen::VectorXd r;          // reference log-rates
  Eigen::VectorXd q_fixed;    // m^3/hr
  Eigen::VectorXd q_applied;  // m^3/hr at the control wells
  Eigen::VectorXd demand;     // m^3/hr, empty without demand
  double error_norm = 0.0;    // ||y_e||_2
  double modal_norm = 0.0;    // ||z||_2, the L2 norm of the pressure field
  Eigen::VectorXd region_pressure;  // mean u over each region, MPa
};

struct FieldSnapshot {
  double t = 0.0;
  Eigen::MatrixXd grid;  // ny x nx, MPa
};

struct SimulationResult {
  OdeStatus status = OdeStatus::kCompleted;
  std::string message;
  std::vector<TimeSeriesRecord> records;
  std::vector<FieldSnapshot> snapshots;
  double final_time = 0.0;
  Eigen::VectorXd final_state;
  /// Largest |W Qbar_c - D| seen at any accepted step (0 without demand).
  double max_demand_residual = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  double nominal_condition = 0.0;  // cond(B0), 0 when uncontrolled
  double wall_seconds = 0.0;

  bool ok() const { return status == OdeStatus::kCompleted; }
};

/// Output grid used by run_scenario: 0, cadence, 2 cadence, ..., horizon.
std::vector<double> cadence_times(double horizon, double cadence);

/**
 * @brief Integrates a scenario over its horizon.
 *
 * The horizon is split at the end of the reference ramp, at demand switches
 * and at hold instants so that no step straddles a discontinuity. On
 * integrator failure the records reached so far are returned with the status.
 */
SimulationResult run_scenario(const ScenarioConfig& cfg);
SimulationResult run_scenario(const ClosedLoopSystem& system);

/**
 * @brief First time after which the relative change of `values` over one
 * window stays below `threshold`.
 *
 * For each sample t_i with t_i + window inside the series, the change is
 * |v(t_i + window) - v(t_i)| / max(|v(t_i)|, |v(t_i + window)|), with v
 * interpolated linearly. Returns nullopt if the condition never settles.
 */
std::optional<double> steady_state_time(const std::vector<double>& times, const std::vector<double>& values,
                                        double threshold = 1e-3, double window = 730.0);

}  // namespace seisctl
