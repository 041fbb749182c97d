#include "seisctl/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace seisctl {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

double rms_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1, double rtol,
                double atol) {
  if (err.size() == 0) return 0.0;
  const Eigen::ArrayXd scale = atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array();
  return std::sqrt((err.array() / scale).square().mean());
}

Eigen::VectorXd hermite(double t0, double t1, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                        const Eigen::VectorXd& f0, const Eigen::VectorXd& f1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1;
}

std::vector<double> clipped_outputs(std::span<const double> output_times, double t0, double t1) {
  std::vector<double> out;
  for (double t : output_times) {
    if (t >= t0 && t <= t1) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Initial step heuristic of Hairer, Norsett and Wanner (order 3 method).
double initial_step(const OdeRhs& rhs, double t0, const Eigen::VectorXd& y0, const Eigen::VectorXd& f0,
                    double rtol, double atol, double max_step, std::size_t& evals) {
  if (y0.size() == 0) return max_step;
  const Eigen::ArrayXd scale = atol + rtol * y0.cwiseAbs().array();
  const double d0 = std::sqrt((y0.array() / scale).square().mean());
  const double d1 = std::sqrt((f0.array() / scale).square().mean());
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, max_step);
  const Eigen::VectorXd y1 = y0 + h0 * f0;
  Eigen::VectorXd f1(y0.size());
  rhs(t0 + h0, y1, f1);
  ++evals;
  const double d2 = std::sqrt(((f1 - f0).array() / scale).square().mean()) / h0;
  const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                  : std::pow(0.01 / std::max(d1, d2), 1.0 / 3.0);
  return std::min({100 * h0, h1, max_step});
}

}  // namespace

const char* to_string(OdeStatus status) {
  switch (status) {
    case OdeStatus::kCompleted: return "completed";
    case OdeStatus::kStepSizeUnderflow: return "step_size_underflow";
    case OdeStatus::kNonFinite: return "non_finite_state";
    case OdeStatus::kRhsFailure: return "rhs_failure";
  }
  return "unknown";
}

OdeResult integrate_rk23(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1,
                         const Rk23Options& options, std::span<const double> output_times,
                         const StepObserver& observer) {
  OdeResult res;
  const std::vector<double> outputs = clipped_outputs(output_times, t0, t1);
  std::size_t next_out = 0;
  double t = t0;
  Eigen::VectorXd y = y0;
  res.final_time = t;
  res.final_state = y;

  while (next_out < outputs.size() && outputs[next_out] <= t0) {
    res.times.push_back(outputs[next_out]);
    res.states.push_back(y0);
    ++next_out;
  }
  if (t1 <= t0) return res;

  const auto n = y0.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), y_new(n), err(n), tmp(n);
  try {
    rhs(t, y, k1);
    ++res.rhs_evaluations;
    double h = options.first_step > 0.0
                   ? std::min(options.first_step, options.max_step)
                   : initial_step(rhs, t, y, k1, options.rtol, options.atol, options.max_step, res.rhs_evaluations);

    while (t < t1) {
      bool final_step = false;
      if (t + h >= t1 || t1 - (t + h) < 1e-12 * std::max(1.0, std::abs(t1))) {
        h = t1 - t;
        final_step = true;
      }
      if (h < options.min_step && !final_step) {
        res.status = OdeStatus::kStepSizeUnderflow;
        res.message = "step size " + std::to_string(h) + " fell below min_step at t = " + std::to_string(t);
        break;
      }

      tmp = y + 0.5 * h * k1;
      rhs(t + 0.5 * h, tmp, k2);
      tmp = y + 0.75 * h * k2;
      rhs(t + 0.75 * h, tmp, k3);
      y_new = y + h * ((2.0 / 9.0) * k1 + (1.0 / 3.0) * k2 + (4.0 / 9.0) * k3);
      const double t_new = final_step ? t1 : t + h;
      rhs(t_new, y_new, k4);
      res.rhs_evaluations += 3;
      err = h * ((-5.0 / 72.0) * k1 + (1.0 / 12.0) * k2 + (1.0 / 9.0) * k3 + (-1.0 / 8.0) * k4);
      double norm = rms_norm(err, y, y_new, options.rtol, options.atol);
      if (!std::isfinite(norm) || !all_finite(y_new)) norm = std::numeric_limits<double>::infinity();

      if (norm <= 1.0) {
        for (; next_out < outputs.size() && outputs[next_out] <= t_new; ++next_out) {
          res.times.push_back(outputs[next_out]);
          res.states.push_back(outputs[next_out] == t_new ? y_new
                                                          : hermite(t, t_new, y, y_new, k1, k4, outputs[next_out]));
        }
        t = t_new;
        y = y_new;
        k1 = k4;
        res.last_step = h;
        ++res.accepted_steps;
        res.final_time = t;
        res.final_state = y;
        if (observer) observer(t, y);
        const double factor = norm == 0.0 ? 10.0 : std::clamp(0.9 * std::pow(norm, -1.0 / 3.0), 0.2, 10.0);
        h = std::min(h * factor, options.max_step);
      } else {
        ++res.rejected_steps;
        const double factor = std::isfinite(norm) ? std::clamp(0.9 * std::pow(norm, -1.0 / 3.0), 0.2, 1.0) : 0.2;
        h *= factor;
      }
    }
  } catch (const std::exception& e) {
    res.status = OdeStatus::kRhsFailure;
    res.message = e.what();
  }
  if (res.ok() && !all_finite(res.final_state)) {
    res.status = OdeStatus::kNonFinite;
    res.message = "state became non-finite";
  }
  return res;
}

OdeResult integrate_rk4(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0, double t1, double dt,
                        std::span<const double> output_times, const StepObserver& observer) {
  OdeResult res;
  res.final_time = t0;
  res.final_state = y0;
  if (!(dt > 0.0)) {
    res.status = OdeStatus::kStepSizeUnderflow;
    res.message = "fixed step dt must be positive";
    return res;
  }
  std::vector<double> stops = clipped_outputs(output_times, t0, t1);
  for (; !stops.empty() && stops.front() <= t0; stops.erase(stops.begin())) {
    res.times.push_back(stops.front());
    res.states.push_back(y0);
  }
  const std::size_t n_outputs = stops.size();
  if (stops.empty() || stops.back() < t1) stops.push_back(t1);

  const auto n = y0.size();
  Eigen::VectorXd y = y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = t0;
  try {
    for (std::size_t s = 0; s < stops.size(); ++s) {
      const double seg_start = t;
      const double seg_end = stops[s];
      const auto full = static_cast<long long>(std::floor((seg_end - seg_start) / dt * (1.0 + 1e-12)));
      long long i = 0;
      while (t < seg_end) {
        double t_next = seg_start + static_cast<double>(i + 1) * dt;
        if (i + 1 > full || t_next > seg_end) t_next = seg_end;
        const double h = t_next - t;
        if (h <= 0.0) {
          t = seg_end;
          break;
        }
        rhs(t, y, k1);
        tmp = y + 0.5 * h * k1;
        rhs(t + 0.5 * h, tmp, k2);
        tmp = y + 0.5 * h * k2;
        rhs(t + 0.5 * h, tmp, k3);
        tmp = y + h * k3;
        rhs(t_next, tmp, k4);
        res.rhs_evaluations += 4;
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_next;
        ++i;
        ++res.accepted_steps;
        res.last_step = h;
        res.final_time = t;
        res.final_state = y;
        if (!all_finite(y)) {
          res.status = OdeStatus::kNonFinite;
          res.message = "state became non-finite at t = " + std::to_string(t);
          return res;
        }
        if (observer) observer(t, y);
      }
      if (s < n_outputs) {
        res.times.push_back(seg_end);
        res.states.push_back(y);
      }
    }
  } catch (const std::exception& e) {
    res.status = OdeStatus::kRhsFailure;
    res.message = e.what();
  }
  return res;
}

}  // namespace seisctl
