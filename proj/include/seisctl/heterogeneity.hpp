#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "seisctl/spectral_basis.hpp"

namespace seisctl {

struct HeterogeneitySpec {
  bool enabled = false;
  std::uint64_t seed = 7;
  double range_decades = 3.0;       // dynamic range of c_hy(x)/c_hy
  double mean_ratio = 1.08;         // spatial mean of c_hy(x)/c_hy
  double beta_range_decades = 1.0;  // dynamic range of beta(x)/beta, mean 1
  int quadrature_panels = 32;       // per axis, 6 Gauss points each

  friend bool operator==(const HeterogeneitySpec&, const HeterogeneitySpec&) = default;
};

struct GaussianBump {
  Point center;
  double width = 1.0;
  double amplitude = 0.0;
};

/**
 * @brief Positive ratio field 10^(lo + (hi - lo) s(x)^shape), where s is a
 * sum of Gaussian bumps min-max normalised to [0, 1] on the quadrature grid.
 *
 * The shape exponent is tuned so that the spatial mean hits a target, while
 * the extremes stay pinned at 10^lo and 10^hi.
 */
class LogBumpField {
 public:
  static LogBumpField constant(double value);
  static LogBumpField fitted(std::vector<GaussianBump> bumps, double lo_decades, double hi_decades,
                             double target_mean, const std::vector<double>& nodes,
                             const std::vector<double>& weights, double length);

  double operator()(Point p) const;
  bool is_constant() const { return bumps_.empty(); }
  double shape() const { return shape_; }
  double min_value() const;
  double max_value() const;

 private:
  double raw(Point p) const;

  std::vector<GaussianBump> bumps_;
  double raw_min_ = 0.0;
  double raw_max_ = 1.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double shape_ = 1.0;
  double constant_ = 1.0;
};

/// Smooth c_hy(x)/c_hy and beta(x)/beta fields with samples cached on a
/// tensor Gauss grid over the reservoir.
class HeterogeneityField {
 public:
  HeterogeneityField(LogBumpField diffusivity, LogBumpField compressibility, double length, int panels);

  double diffusivity_ratio(Point p) const { return diffusivity_(p); }
  double compressibility_ratio(Point p) const { return compressibility_(p); }
  const LogBumpField& diffusivity() const { return diffusivity_; }
  const LogBumpField& compressibility() const { return compressibility_; }

  double length() const { return length_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// diffusivity ratio at (nodes[i], nodes[j]) stored at (i, j).
  const Eigen::MatrixXd& diffusivity_samples() const { return diffusivity_samples_; }

  /// Quadrature mean of c_hy(x)/c_hy over the reservoir.
  double mean_diffusivity_ratio() const;

 private:
  LogBumpField diffusivity_;
  LogBumpField compressibility_;
  double length_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  Eigen::MatrixXd diffusivity_samples_;
};

/// Deterministic field per seed. c_hy ratio spans [10^(-2r/3), 10^(r/3)] for
/// r = range_decades (1e-2 to 1e1 at r = 3); beta ratio spans
/// 10^(+-beta_range/2) with mean 1. A zero range yields a constant field.
HeterogeneityField generate_heterogeneity(const HeterogeneitySpec& spec, double length);

}  // namespace seisctl
