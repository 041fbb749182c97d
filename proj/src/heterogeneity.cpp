#include "seisctl/heterogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "seisctl/errors.hpp"
#include "seisctl/quadrature.hpp"

namespace seisctl {

namespace {

constexpr int kGaussPoints = 6;
constexpr int kBumpCount = 6;

double uniform(std::mt19937_64& gen, double a, double b) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

std::vector<GaussianBump> draw_bumps(std::mt19937_64& gen, double length) {
  std::vector<GaussianBump> bumps(kBumpCount);
  for (auto& b : bumps) {
    b.center.x = uniform(gen, 0.1 * length, 0.9 * length);
    b.center.y = uniform(gen, 0.1 * length, 0.9 * length);
    b.width = uniform(gen, 0.1 * length, 0.2 * length);
    b.amplitude = uniform(gen, -1.0, 1.0);
  }
  return bumps;
}

}  // namespace

LogBumpField LogBumpField::constant(double value) {
  if (!(value > 0.0)) throw DomainError("constant ratio field must be positive");
  LogBumpField f;
  f.constant_ = value;
  f.lo_ = f.hi_ = std::log10(value);
  return f;
}

LogBumpField LogBumpField::fitted(std::vector<GaussianBump> bumps, double lo_decades, double hi_decades,
                                  double target_mean, const std::vector<double>& nodes,
                                  const std::vector<double>& weights, double length) {
  if (bumps.empty()) throw DomainError("bump field needs at least one bump");
  const double lo_value = std::pow(10.0, lo_decades);
  const double hi_value = std::pow(10.0, hi_decades);
  if (!(target_mean > lo_value && target_mean < hi_value)) {
    throw DomainError("target mean ratio must lie strictly inside the field's dynamic range");
  }
  LogBumpField f;
  f.bumps_ = std::move(bumps);
  f.lo_ = lo_decades;
  f.hi_ = hi_decades;

  const std::size_t n = nodes.size();
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.raw({nodes[i], nodes[j]});
  }
  f.raw_min_ = raw.minCoeff();
  f.raw_max_ = raw.maxCoeff();
  if (!(f.raw_max_ > f.raw_min_)) throw DomainError("bump sum is flat on the quadrature grid");
  const Eigen::MatrixXd s = (raw.array() - f.raw_min_) / (f.raw_max_ - f.raw_min_);
  const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
  const double area = length * length;

  auto mean_for = [&](double shape) {
    const Eigen::MatrixXd v = (std::log(10.0) * (lo_decades + (hi_decades - lo_decades) * s.array().pow(shape))).exp();
    return w.dot(v * w) / area;
  };
  // mean_for is decreasing in shape; bisect in log space.
  double a = std::log(1e-4);
  double b = std::log(1e4);
  if (mean_for(std::exp(a)) < target_mean || mean_for(std::exp(b)) > target_mean) {
    throw DomainError("target mean ratio is not reachable with this bump field");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mean_for(std::exp(mid)) > target_mean) {
      a = mid;
    } else {
      b = mid;
    }
  }
  f.shape_ = std::exp(0.5 * (a + b));
  return f;
}

double LogBumpField::raw(Point p) const {
  double v = 0.0;
  for (const auto& b : bumps_) {
    const double dx = p.x - b.center.x;
    const double dy = p.y - b.center.y;
    v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.width * b.width));
  }
  return v;
}

double LogBumpField::operator()(Point p) const {
  if (bumps_.empty()) return constant_;
  const double s = std::clamp((raw(p) - raw_min_) / (raw_max_ - raw_min_), 0.0, 1.0);
  return std::pow(10.0, lo_ + (hi_ - lo_) * std::pow(s, shape_));
}

double LogBumpField::min_value() const { return bumps_.empty() ? constant_ : std::pow(10.0, lo_); }
double LogBumpField::max_value() const { return bumps_.empty() ? constant_ : std::pow(10.0, hi_); }

HeterogeneityField::HeterogeneityField(LogBumpField diffusivity, LogBumpField compressibility, double length,
                                       int panels)
    : diffusivity_(std::move(diffusivity)), compressibility_(std::move(compressibility)), length_(length) {
  const QuadratureRule rule = composite_gauss(0.0, length, panels, kGaussPoints);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  diffusivity_samples_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      diffusivity_samples_(i, j) = diffusivity_({nodes_[static_cast<std::size_t>(i)], nodes_[static_cast<std::size_t>(j)]});
    }
  }
}

double HeterogeneityField::mean_diffusivity_ratio() const {
  const Eigen::Map<const Eigen::VectorXd> w(weights_.data(), static_cast<Eigen::Index>(weights_.size()));
  return w.dot(diffusivity_samples_ * w) / (length_ * length_);
}

HeterogeneityField generate_heterogeneity(const HeterogeneitySpec& spec, double length) {
  if (!(spec.mean_ratio > 0.0)) throw DomainError("target mean ratio must be positive");
  if (spec.range_decades < 0.0 || spec.beta_range_decades < 0.0) {
    throw DomainError("dynamic ranges must be non-negative");
  }
  if (spec.quadrature_panels < 1) throw DomainError("quadrature_panels must be >= 1");
  const QuadratureRule rule = composite_gauss(0.0, length, spec.quadrature_panels, kGaussPoints);

  std::mt19937_64 gen(spec.seed);
  auto c_bumps = draw_bumps(gen, length);
  auto b_bumps = draw_bumps(gen, length);

  LogBumpField diffusivity =
      spec.range_decades == 0.0
          ? LogBumpField::constant(spec.mean_ratio)
          : LogBumpField::fitted(std::move(c_bumps), -2.0 * spec.range_decades / 3.0, spec.range_decades / 3.0,
                                 spec.mean_ratio, rule.nodes, rule.weights, length);
  LogBumpField compressibility =
      spec.beta_range_decades == 0.0
          ? LogBumpField::constant(1.0)
          : LogBumpField::fitted(std::move(b_bumps), -0.5 * spec.beta_range_decades, 0.5 * spec.beta_range_decades,
                                 1.0, rule.nodes, rule.weights, length);
  return HeterogeneityField(std::move(diffusivity), std::move(compressibility), length, spec.quadrature_panels);
}

}  // namespace seisctl
