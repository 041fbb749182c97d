#include "seisctl/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "seisctl/errors.hpp"

namespace seisctl {

namespace {

std::shared_ptr<const HeterogeneityField> build_field(const ScenarioConfig& cfg) {
  if (!cfg.heterogeneity.enabled) return nullptr;
  return std::make_shared<const HeterogeneityField>(generate_heterogeneity(cfg.heterogeneity, cfg.physics.length));
}

ModalDiffusion build_dynamics(const ScenarioConfig& cfg, const SpectralBasis& basis,
                              const std::shared_ptr<const HeterogeneityField>& field) {
  const WellLayout wells{cfg.fixed_wells, cfg.control_wells};
  if (!field) return ModalDiffusion::homogeneous(basis, cfg.physics, wells);
  const GalerkinOperator op = assemble_galerkin_operator(*field, basis, cfg.physics, wells);
  return ModalDiffusion::heterogeneous(op, basis, wells);
}

const ScenarioConfig& validated(const ScenarioConfig& cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

ClosedLoopSystem::ClosedLoopSystem(const ScenarioConfig& cfg)
    : cfg_(validated(cfg)),
      basis_(SpectralBasis::lowest(cfg.physics.length, cfg.basis_modes_per_axis, cfg.basis_modes)),
      field_(build_field(cfg)),
      dynamics_(build_dynamics(cfg, basis_, field_)),
      averaging_(region_averaging_matrix(cfg.regions, basis_)) {
  if (cfg_.demand.active()) constraint_ = DemandConstraint::from_weights(cfg_.demand.weights);
  if (cfg_.control.enabled) {
    const auto mc = static_cast<std::size_t>(tracked());
    const std::span<const Point> wells(cfg_.control_wells);
    if (constraint_) {
      nominal_ = nominal_b0(cfg_.regions, wells, cfg_.physics, cfg_.control.nominal_bias, constraint_->null_basis);
    } else {
      nominal_ = nominal_b0(cfg_.regions, wells.first(mc), cfg_.physics, cfg_.control.nominal_bias);
    }
  }
}

ControlAction ClosedLoopSystem::control_action(double t, const Eigen::VectorXd& h, const Eigen::VectorXd& nu) const {
  ControlAction a;
  const Eigen::Index mc = tracked();
  if (cfg_.reference.target.size() == mc) {
    ReferenceSample ref = reference(t, cfg_.reference);
    a.r = std::move(ref.r);
    a.rdot = std::move(ref.rdot);
  } else {
    a.r = Eigen::VectorXd::Zero(mc);
    a.rdot = Eigen::VectorXd::Zero(mc);
  }
  a.error = h - a.r;
  if (!cfg_.control.enabled) {
    a.q_control = Eigen::VectorXd::Zero(0);
    a.q_applied = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg_.control_wells.size()));
    return a;
  }
  a.q_control = control_law(a.error, nu, a.rdot, *nominal_, cfg_.control.gains, cfg_.control.sign_epsilon);
  if (constraint_) {
    a.demand = cfg_.demand.at(t);
    a.q_applied = demand_projection(a.q_control, *constraint_, a.demand);
  } else {
    a.q_applied = a.q_control;
  }
  return a;
}

void ClosedLoopSystem::rhs(double t, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) const {
  const Eigen::Index K = modes();
  const Eigen::Index mc = tracked();
  const Eigen::VectorXd h = x.segment(K, mc);
  const Eigen::VectorXd nu = x.tail(mc);
  const ControlAction a = control_action(t, h, nu);
  const Eigen::VectorXd& q = held_ ? *held_ : a.q_applied;

  dxdt.resize(x.size());
  Eigen::VectorXd zdot(K);
  dynamics_.rhs(x.head(K), cfg_.fixed_fluxes, q, zdot);
  const Eigen::VectorXd rates = averaging_ * zdot;
  Eigen::VectorXd hdot(mc);
  sr_rhs(h, rates, cfg_.physics, hdot);

  dxdt.head(K) = zdot;
  dxdt.segment(K, mc) = hdot;
  if (cfg_.control.enabled) {
    dxdt.tail(mc) = integral_rhs(a.error, cfg_.control.gains, cfg_.control.sign_epsilon);
  } else {
    dxdt.tail(mc).setZero();
  }
}

std::vector<double> cadence_times(double horizon, double cadence) {
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor(horizon / cadence * (1.0 + 1e-12)));
  for (long long i = 0; i <= n; ++i) out.push_back(std::min(static_cast<double>(i) * cadence, horizon));
  if (out.back() < horizon) out.push_back(horizon);
  return out;
}

namespace {

std::vector<double> breakpoints(const ScenarioConfig& cfg) {
  const double T = cfg.output.horizon;
  std::vector<double> pts;
  if (cfg.control.enabled && cfg.reference.ramp < T) pts.push_back(cfg.reference.ramp);
  for (double s : cfg.demand.switch_times(T)) pts.push_back(s);
  if (cfg.control.enabled && cfg.control.hold_period > 0.0) {
    for (long long k = 1;; ++k) {
      const double s = static_cast<double>(k) * cfg.control.hold_period;
      if (s >= T) break;
      pts.push_back(s);
    }
  }
  pts.push_back(T);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

SimulationResult run_scenario(const ScenarioConfig& cfg) { return run_scenario(ClosedLoopSystem(cfg)); }

SimulationResult run_scenario(const ClosedLoopSystem& system_in) {
  const auto start = std::chrono::steady_clock::now();
  ClosedLoopSystem system = system_in;
  const ScenarioConfig& cfg = system.config();
  const bool zoh = cfg.control.enabled && cfg.control.hold_period > 0.0;

  SimulationResult out;
  if (system.nominal()) out.nominal_condition = system.nominal()->condition_number();

  const std::vector<double> cadence = cadence_times(cfg.output.horizon, cfg.output.cadence);
  std::vector<double> outputs = cadence;
  outputs.insert(outputs.end(), cfg.output.snapshot_times.begin(), cfg.output.snapshot_times.end());
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  const std::vector<double> snaps = [&] {
    std::vector<double> s = cfg.output.snapshot_times;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }();

  const Eigen::Index K = system.modes();
  const Eigen::Index mc = system.tracked();

  std::optional<Eigen::VectorXd> held;
  auto action_at = [&](double t, const Eigen::VectorXd& x) {
    ControlAction a = system.control_action(t, x.segment(K, mc), x.tail(mc));
    if (held) a.q_applied = *held;
    return a;
  };

  auto emit = [&](double t, const Eigen::VectorXd& x) {
    if (std::binary_search(cadence.begin(), cadence.end(), t)) {
      const ControlAction a = action_at(t, x);
      TimeSeriesRecord rec;
      rec.t = t;
      rec.h = x.segment(K, mc);
      rec.r = a.r;
      rec.q_fixed = cfg.fixed_fluxes;
      rec.q_applied = a.q_applied;
      rec.demand = a.demand;
      rec.error_norm = a.error.norm();
      rec.modal_norm = x.head(K).norm();
      rec.region_pressure = system.averaging() * x.head(K);
      out.records.push_back(std::move(rec));
    }
    if (std::binary_search(snaps.begin(), snaps.end(), t)) {
      out.snapshots.push_back({t, system.basis().reconstruct(x.head(K), cfg.output.snapshot_nx, cfg.output.snapshot_ny)});
    }
  };

  const StepObserver observer = [&](double t, const Eigen::VectorXd& x) {
    if (!system.constraint()) return;
    const ControlAction a = action_at(t, x);
    const double residual = (system.constraint()->weights * a.q_applied - a.demand).cwiseAbs().maxCoeff();
    out.max_demand_residual = std::max(out.max_demand_residual, residual);
  };
  const OdeRhs rhs = [&system](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) { system.rhs(t, x, dx); };

  Eigen::VectorXd x = system.initial_state();
  double t = 0.0;
  out.final_state = x;
  std::size_t next_output = 0;
  for (double seg_end : breakpoints(cfg)) {
    if (zoh) {
      held = system.control_action(t, x.segment(K, mc), x.tail(mc)).q_applied;
      system.hold(*held);
    }
    std::vector<double> seg_outputs;
    while (next_output < outputs.size() && outputs[next_output] <= seg_end) {
      seg_outputs.push_back(outputs[next_output]);
      ++next_output;
    }
    OdeResult res;
    if (cfg.integrator.method == IntegratorMethod::kRk4) {
      res = integrate_rk4(rhs, x, t, seg_end, cfg.integrator.dt, seg_outputs, observer);
    } else {
      Rk23Options opts;
      opts.rtol = cfg.integrator.rtol;
      opts.atol = cfg.integrator.atol;
      opts.max_step = cfg.integrator.max_step;
      opts.min_step = cfg.integrator.min_step;
      res = integrate_rk23(rhs, x, t, seg_end, opts, seg_outputs, observer);
    }
    for (std::size_t i = 0; i < res.times.size(); ++i) emit(res.times[i], res.states[i]);
    out.accepted_steps += res.accepted_steps;
    out.rejected_steps += res.rejected_steps;
    out.rhs_evaluations += res.rhs_evaluations;
    out.final_time = res.final_time;
    out.final_state = res.final_state;
    if (!res.ok()) {
      out.status = res.status;
      out.message = res.message;
      break;
    }
    x = res.final_state;
    t = seg_end;
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::optional<double> steady_state_time(const std::vector<double>& times, const std::vector<double>& values,
                                        double threshold, double window) {
  if (times.size() != values.size()) throw DomainError("time and value series differ in length");
  if (times.empty()) return std::nullopt;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
  auto interp = [&](double t) {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    const auto j = static_cast<std::size_t>(it - times.begin());
    if (j < times.size() && times[j] == t) return values[j];
    const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
    return (1.0 - w) * values[j - 1] + w * values[j];
  };
  const double t_end = times.back();
  std::optional<double> settled;
  bool any = false;
  for (std::size_t i = 0; i < times.size() && times[i] + window <= t_end; ++i) {
    any = true;
    const double a = values[i];
    const double b = interp(times[i] + window);
    const double scale = std::max(std::abs(a), std::abs(b));
    const double change = scale == 0.0 ? 0.0 : std::abs(b - a) / scale;
    if (change < threshold) {
      if (!settled) settled = times[i];
    } else {
      settled.reset();
    }
  }
  if (!any) return std::nullopt;
  return settled;
}

}  // namespace seisctl
