#pragma once

// Reference implementations used only by the tests. They are written
// independently of the library code they check.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace seisctl::oracle {

/// Gauss-Legendre nodes and weights on [a, b] by the Golub-Welsch eigenvalue method.
inline std::pair<std::vector<double>, std::vector<double>> golub_welsch(int n, double a, double b) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  std::vector<double> nodes(n), weights(n);
  for (int k = 0; k < n; ++k) {
    const double v = eig.eigenvectors()(0, k);
    nodes[k] = 0.5 * (a + b) + 0.5 * (b - a) * eig.eigenvalues()(k);
    weights[k] = (b - a) * v * v;
  }
  return {nodes, weights};
}

/// Composite rule built from golub_welsch panels.
inline std::pair<std::vector<double>, std::vector<double>> composite(double a, double b, int panels, int points) {
  std::vector<double> nodes, weights;
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    auto [x, q] = golub_welsch(points, a + p * w, a + (p + 1) * w);
    nodes.insert(nodes.end(), x.begin(), x.end());
    weights.insert(weights.end(), q.begin(), q.end());
  }
  return {nodes, weights};
}

/// Recursive adaptive Simpson quadrature with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 40) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Classical RK4 step for a generic vector field, used to co-integrate systems.
template <typename F>
Eigen::VectorXd rk4_step(const F& f, double t, const Eigen::VectorXd& y, double dt) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = f(t + dt, y + dt * k3);
  return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace seisctl::oracle
