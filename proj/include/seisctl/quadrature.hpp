#pragma once

#include <vector>

namespace seisctl {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule on [a, b]: `panels` equal panels with
/// `points` nodes each.
QuadratureRule composite_gauss(double a, double b, int panels, int points);

}  // namespace seisctl
