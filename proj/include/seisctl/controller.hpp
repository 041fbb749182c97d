#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "seisctl/reservoir.hpp"
#include "seisctl/spectral_basis.hpp"

namespace seisctl {

/// |v|^gamma sign(v) with sign(0) = 0. With epsilon > 0 the sign is replaced
/// by the boundary layer v / (|v| + epsilon).
double signed_power(double v, double gamma, double epsilon = 0.0);
Eigen::VectorXd signed_power(const Eigen::VectorXd& v, double gamma, double epsilon = 0.0);

struct ControllerGains {
  Eigen::MatrixXd k1;  // positive diagonal
  Eigen::MatrixXd k2;  // positive definite
  double exponent = -0.6;  // l in [-1, 0]

  void validate() const;
  /// 1 / (1 - l)
  double proportional_power() const { return 1.0 / (1.0 - exponent); }
  /// (1 + l) / (1 - l)
  double integral_power() const { return (1.0 + exponent) / (1.0 - exponent); }

  friend bool operator==(const ControllerGains& a, const ControllerGains& b) {
    auto same = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
      return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
    };
    return same(a.k1, b.k1) && same(a.k2, b.k2) && a.exponent == b.exponent;
  }
};

/// Quintic smoothstep from 0 to `target` over [0, ramp], constant after.
struct ReferenceSpec {
  Eigen::VectorXd target;  // per-region log-rate
  double ramp = 730.0;     // hr

  friend bool operator==(const ReferenceSpec& a, const ReferenceSpec& b) {
    return a.target.size() == b.target.size() && a.target == b.target && a.ramp == b.ramp;
  }
};

struct ReferenceSample {
  Eigen::VectorXd r;
  Eigen::VectorXd rdot;
  Eigen::VectorXd rddot;
};

ReferenceSample reference(double t, const ReferenceSpec& spec);

/// Largest |rdot| and |rddot| of the unit smoothstep over a ramp of length T:
/// 15/(8T) and 10/(sqrt(3) T^2), scaled by |target|.
std::pair<double, double> reference_derivative_bounds(double target, double ramp);

/// B0 with its LU factorisation kept for repeated solves.
class NominalModel {
 public:
  NominalModel(Eigen::MatrixXd b0, double bias);

  const Eigen::MatrixXd& matrix() const { return b0_; }
  double bias() const { return bias_; }
  double condition_number() const { return condition_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

 private:
  Eigen::MatrixXd b0_;
  double bias_;
  double condition_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
};

/**
 * @brief Nominal input matrix from parameters biased by `bias`.
 *
 * Without a null-space basis this is the B_c rule evaluated at the nominal
 * parameters; with one it is B_c-bar(nominal) * Wbar. Singular results throw.
 */
NominalModel nominal_b0(std::span<const RegionSpec> regions, std::span<const Point> control_wells,
                        const PhysicalParams& true_params, double bias,
                        const std::optional<Eigen::MatrixXd>& null_basis = std::nullopt);

/**
 * @brief Q_c = B0^{-1} (-K1 [y_e]^{1/(1-l)} + nu + rdot), returned in m^3/hr.
 */
Eigen::VectorXd control_law(const Eigen::VectorXd& error, const Eigen::VectorXd& nu, const Eigen::VectorXd& rdot,
                            const NominalModel& b0, const ControllerGains& gains, double epsilon = 0.0);

/// nudot = -K2 [y_e]^{(1+l)/(1-l)}.
Eigen::VectorXd integral_rhs(const Eigen::VectorXd& error, const ControllerGains& gains, double epsilon = 0.0);

/// Orthonormal basis of ker(W) from a Householder QR of W^T. The first entry
/// of each column with magnitude above 1e-12 is made positive.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& w);

/// W Qbar = D allocation: Qbar = Wbar Q_c + W^T (W W^T)^{-1} D.
struct DemandConstraint {
  Eigen::MatrixXd weights;    // W, m_r x (m_c + m_r)
  Eigen::MatrixXd null_basis; // Wbar, (m_c + m_r) x m_c
  Eigen::MatrixXd particular; // W^T (W W^T)^{-1}

  static DemandConstraint from_weights(const Eigen::MatrixXd& w);
};

Eigen::VectorXd demand_projection(const Eigen::VectorXd& q_control, const DemandConstraint& constraint,
                                  const Eigen::VectorXd& demand);

}  // namespace seisctl
