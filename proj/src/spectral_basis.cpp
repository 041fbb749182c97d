#include "seisctl/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "seisctl/errors.hpp"

namespace seisctl {

namespace {

constexpr double kEdgeTol = 1e-12;

void check_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("reservoir length must be positive, got " + std::to_string(length));
  }
}

void check_inside(Point p, double length) {
  if (!(p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= length)) {
    throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") lies outside the reservoir");
  }
}

}  // namespace

bool RectRegion::contains(Point p) const {
  return p.x > x_lo && p.x < x_hi && p.y > y_lo && p.y < y_hi;
}

bool RectRegion::on_boundary(Point p) const {
  const bool in_x = p.x >= x_lo - kEdgeTol && p.x <= x_hi + kEdgeTol;
  const bool in_y = p.y >= y_lo - kEdgeTol && p.y <= y_hi + kEdgeTol;
  if (!in_x || !in_y) return false;
  return std::abs(p.x - x_lo) <= kEdgeTol || std::abs(p.x - x_hi) <= kEdgeTol ||
         std::abs(p.y - y_lo) <= kEdgeTol || std::abs(p.y - y_hi) <= kEdgeTol;
}

void RectRegion::validate(double length) const {
  if (sign != 1 && sign != -1) throw DomainError("rectangle sign must be +1 or -1");
  if (!(x_lo >= 0.0 && x_lo < x_hi && x_hi <= length && y_lo >= 0.0 && y_lo < y_hi &&
        y_hi <= length)) {
    throw DomainError("rectangle [" + std::to_string(x_lo) + ", " + std::to_string(x_hi) +
                      "] x [" + std::to_string(y_lo) + ", " + std::to_string(y_hi) +
                      "] is degenerate or leaves the reservoir");
  }
}

double RegionSpec::area() const {
  double a = 0.0;
  for (const auto& r : rects) a += r.sign * r.area();
  return a;
}

int RegionSpec::membership(Point p) const {
  int count = 0;
  for (const auto& r : rects) {
    if (r.contains(p)) count += r.sign;
  }
  return count;
}

bool RegionSpec::touches_boundary(Point p) const {
  return std::any_of(rects.begin(), rects.end(), [&](const RectRegion& r) { return r.on_boundary(p); });
}

void RegionSpec::validate(double length) const {
  if (rects.empty()) throw DomainError("region has no rectangles");
  for (const auto& r : rects) r.validate(length);
  if (!(area() > 0.0)) throw DomainError("region has non-positive signed area");
}

double eigenvalue(int n, int m, double length) {
  if (n < 1 || m < 1) throw DomainError("mode indices must be >= 1");
  check_length(length);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 * static_cast<double>(n * n + m * m) / (length * length);
}

double eval_eigenfunction(const Mode& mode, Point p, double length) {
  check_length(length);
  check_inside(p, length);
  if (p.x == 0.0 || p.y == 0.0 || p.x == length || p.y == length) return 0.0;
  const double k = std::numbers::pi / length;
  return (2.0 / length) * std::sin(mode.n * k * p.x) * std::sin(mode.m * k * p.y);
}

double rect_integral(const Mode& mode, const RectRegion& rect, double length) {
  check_length(length);
  rect.validate(length);
  const double k = std::numbers::pi / length;
  const double ix = (std::cos(mode.n * k * rect.x_lo) - std::cos(mode.n * k * rect.x_hi)) / (mode.n * k);
  const double iy = (std::cos(mode.m * k * rect.y_lo) - std::cos(mode.m * k * rect.y_hi)) / (mode.m * k);
  return rect.sign * (2.0 / length) * ix * iy;
}

double region_integral(const Mode& mode, const RegionSpec& region, double length) {
  double total = 0.0;
  for (const auto& r : region.rects) total += rect_integral(mode, r, length);
  return total;
}

SpectralBasis::SpectralBasis(double length, int modes_per_axis, std::vector<Mode> modes)
    : length_(length), modes_per_axis_(modes_per_axis), modes_(std::move(modes)) {}

SpectralBasis SpectralBasis::tensor(double length, int modes_per_axis) {
  check_length(length);
  if (modes_per_axis < 1) throw DomainError("modes_per_axis must be >= 1");
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(modes_per_axis * modes_per_axis));
  for (int n = 1; n <= modes_per_axis; ++n) {
    for (int m = 1; m <= modes_per_axis; ++m) {
      modes.push_back({n, m, eigenvalue(n, m, length)});
    }
  }
  return SpectralBasis(length, modes_per_axis, std::move(modes));
}

SpectralBasis SpectralBasis::lowest(double length, int modes_per_axis, int count) {
  auto full = tensor(length, modes_per_axis);
  if (count < 1 || count > modes_per_axis * modes_per_axis) {
    throw DomainError("mode count must lie in [1, N^2]");
  }
  std::vector<Mode> modes = full.modes_;
  // n^2 + m^2 is an exact integer key; compare it rather than lambda.
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    return a.n * a.n + a.m * a.m < b.n * b.n + b.m * b.m;
  });
  modes.resize(static_cast<std::size_t>(count));
  return SpectralBasis(length, modes_per_axis, std::move(modes));
}

Eigen::VectorXd SpectralBasis::eigenvalues() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) out(static_cast<Eigen::Index>(k)) = modes_[k].lambda;
  return out;
}

std::size_t SpectralBasis::index_of(int n, int m) const {
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (modes_[k].n == n && modes_[k].m == m) return k;
  }
  throw DomainError("mode (" + std::to_string(n) + ", " + std::to_string(m) + ") is not in the basis");
}

Eigen::VectorXd SpectralBasis::evaluate(Point p) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = eval_eigenfunction(modes_[k], p, length_);
  }
  return out;
}

Eigen::MatrixXd SpectralBasis::point_load_matrix(std::span<const Point> wells) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(wells.size()));
  for (std::size_t j = 0; j < wells.size(); ++j) {
    const Point w = wells[j];
    if (!(w.x > 0.0 && w.x < length_ && w.y > 0.0 && w.y < length_)) {
      throw DomainError("well " + std::to_string(j + 1) +
                        " must lie strictly inside the reservoir (a boundary source is annihilated)");
    }
    out.col(static_cast<Eigen::Index>(j)) = evaluate(w);
  }
  return out;
}

Eigen::VectorXd SpectralBasis::region_integrals(const RegionSpec& region) const {
  region.validate(length_);
  Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
  for (std::size_t k = 0; k < size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = region_integral(modes_[k], region, length_);
  }
  return out;
}

Eigen::MatrixXd SpectralBasis::reconstruct(const Eigen::VectorXd& z, int nx, int ny) const {
  if (z.size() != static_cast<Eigen::Index>(size())) {
    throw DomainError("modal vector length does not match the basis");
  }
  if (nx < 2 || ny < 2) throw DomainError("snapshot grid needs at least 2 x 2 points");
  const int N = modes_per_axis_;
  const double k = std::numbers::pi / length_;

  // Separable evaluation: U = Sy * C^T * Sx^T with C(n-1, m-1) = (2/D) z_nm.
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i = 0; i < size(); ++i) {
    coeff(modes_[i].n - 1, modes_[i].m - 1) += (2.0 / length_) * z(static_cast<Eigen::Index>(i));
  }
  Eigen::MatrixXd sx(nx, N);
  Eigen::MatrixXd sy(ny, N);
  for (int i = 0; i < nx; ++i) {
    const double x = length_ * i / (nx - 1);
    for (int n = 1; n <= N; ++n) sx(i, n - 1) = std::sin(n * k * x);
  }
  for (int j = 0; j < ny; ++j) {
    const double y = length_ * j / (ny - 1);
    for (int m = 1; m <= N; ++m) sy(j, m - 1) = std::sin(m * k * y);
  }
  Eigen::MatrixXd grid = sy * coeff.transpose() * sx.transpose();
  grid.row(0).setZero();
  grid.row(ny - 1).setZero();
  grid.col(0).setZero();
  grid.col(nx - 1).setZero();
  return grid;
}

}  // namespace seisctl
