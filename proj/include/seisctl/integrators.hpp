#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace seisctl {

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;
/// Called after every accepted step with the new (t, y).
using StepObserver = std::function<void(double t, const Eigen::VectorXd& y)>;

enum class OdeStatus { kCompleted, kStepSizeUnderflow, kNonFinite, kRhsFailure };

const char* to_string(OdeStatus status);

struct Rk23Options {
  double rtol = 1e-6;
  double atol = 1e-9;
  double max_step = 10.0;
  double min_step = 1e-10;
  double first_step = 0.0;  // 0 selects the initial step automatically
};

/// States sampled at the requested output times, plus step statistics.
/// On failure the samples reached so far are kept and `final_state` holds the
/// last accepted state.
struct OdeResult {
  OdeStatus status = OdeStatus::kCompleted;
  std::string message;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  double final_time = 0.0;
  Eigen::VectorXd final_state;
  double last_step = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;

  bool ok() const { return status == OdeStatus::kCompleted; }
};

/**
 * @brief Bogacki-Shampine 3(2) embedded pair with FSAL and local
 * extrapolation, integrating from t0 to t1.
 *
 * Output times inside [t0, t1] are filled by cubic Hermite interpolation on
 * each accepted step. The step that reaches t1 lands on it exactly, so callers
 * force breakpoints by splitting the interval.
 */
OdeResult integrate_rk23(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1,
                         const Rk23Options& options, std::span<const double> output_times = {},
                         const StepObserver& observer = {});

/// Classical four-stage Runge-Kutta with fixed step dt. Output times are
/// stepped onto exactly by shortening the step that would cross them.
OdeResult integrate_rk4(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1, double dt,
                        std::span<const double> output_times = {}, const StepObserver& observer = {});

}  // namespace seisctl
