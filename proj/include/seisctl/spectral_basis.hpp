#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace seisctl {

/// Point in the reservoir plane, km.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// One Dirichlet-Laplacian eigenmode (n, m) on the square [0, D]^2.
struct Mode {
  int n = 1;
  int m = 1;
  double lambda = 0.0;  // 1/km^2
};

/// Axis-aligned rectangle with a sign, used to build signed unions.
struct RectRegion {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  int sign = +1;

  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
  bool contains(Point p) const;     // open interior
  bool on_boundary(Point p) const;  // closed edge, within 1e-12 km
  void validate(double length) const;

  friend bool operator==(const RectRegion&, const RectRegion&) = default;
};

/// Signed union of rectangles, e.g. an annular frame {+outer, -inner}.
struct RegionSpec {
  std::vector<RectRegion> rects;

  double area() const;
  /// Sum of the signs of all rectangles whose open interior holds p.
  int membership(Point p) const;
  bool touches_boundary(Point p) const;
  void validate(double length) const;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

/// pi^2 (n^2 + m^2) / D^2.
double eigenvalue(int n, int m, double length);

/// (2/D) sin(n pi x / D) sin(m pi y / D); exactly zero on the boundary.
double eval_eigenfunction(const Mode& mode, Point p, double length);

/// Closed-form integral of the eigenfunction over a rectangle, times its sign.
double rect_integral(const Mode& mode, const RectRegion& rect, double length);

double region_integral(const Mode& mode, const RegionSpec& region, double length);

/**
 * @brief Truncated sine eigenbasis of the Dirichlet Laplacian on [0, D]^2.
 *
 * The functions are L2-orthonormal, so the Galerkin mass matrix is the
 * identity and a modal vector z represents the field sum_k z_k phi_k.
 *
 * Mode ordering: tensor() enumerates (n, m) row-major, i.e.
 * k = (n - 1) N + (m - 1). lowest() keeps the `count` smallest eigenvalues of
 * the N x N tensor set, sorted by (lambda, n, m); ties resolve row-major.
 */
class SpectralBasis {
 public:
  static SpectralBasis tensor(double length, int modes_per_axis);
  static SpectralBasis lowest(double length, int modes_per_axis, int count);

  double length() const { return length_; }
  int modes_per_axis() const { return modes_per_axis_; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t k) const { return modes_.at(k); }

  Eigen::VectorXd eigenvalues() const;
  /// Index of (n, m) in this basis; DomainError if the mode was truncated.
  std::size_t index_of(int n, int m) const;

  /// [phi_1(p), ..., phi_K(p)].
  Eigen::VectorXd evaluate(Point p) const;
  /// Entry (k, j) = phi_k(well_j). Wells must be strictly interior.
  Eigen::MatrixXd point_load_matrix(std::span<const Point> wells) const;
  /// Entry k = integral of phi_k over the region.
  Eigen::VectorXd region_integrals(const RegionSpec& region) const;

  /**
   * @brief Samples u = sum_k z_k phi_k on an nx x ny lattice spanning
   * [0, D]^2 including the boundary.
   * @return ny x nx matrix; row j holds y_j = j D / (ny - 1). Boundary rows
   *         and columns are exactly zero.
   */
  Eigen::MatrixXd reconstruct(const Eigen::VectorXd& z, int nx, int ny) const;

 private:
  SpectralBasis(double length, int modes_per_axis, std::vector<Mode> modes);

  double length_;
  int modes_per_axis_;
  std::vector<Mode> modes_;
};

}  // namespace seisctl
