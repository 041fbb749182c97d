#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "seisctl/spectral_basis.hpp"

namespace seisctl {

class HeterogeneityField;

/// Reservoir and seismicity-rate constants in canonical units (km, hr, MPa).
struct PhysicalParams {
  double c_hy = 3.6e-4;     // hydraulic diffusivity, km^2/hr
  double beta = 1.2e-4;     // mixture compressibility, 1/MPa
  double friction = 0.5;    // mobilized friction coefficient
  double tau0_dot = 1e-6;   // background stressing rate, MPa/hr
  double t_a = 500100.0;    // characteristic decay time, hr
  double length = 5.0;      // reservoir side D, km
  double depth = 0.1;       // reservoir thickness D_z, km

  void validate() const;
  /// Every parameter multiplied by `factor` (nominal-model bias).
  PhysicalParams scaled(double factor) const;
  /// f / (t_a tau0_dot), 1/MPa.
  double sr_gain() const { return friction / (t_a * tau0_dot); }

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

struct WellLayout {
  std::vector<Point> fixed;
  std::vector<Point> controlled;
};

/// B-matrix entry rule: sr_gain / (beta V_i) where well j sits in region i,
/// zero otherwise. V_i = area_i * depth. Throws DomainError for wells on a
/// region edge or regions with ambiguous membership.
Eigen::MatrixXd input_matrix(std::span<const RegionSpec> regions, std::span<const Point> wells,
                             const PhysicalParams& params);

struct InputMatrices {
  Eigen::MatrixXd fixed;       // B_s, m_c x m_s
  Eigen::MatrixXd controlled;  // B_c (or B_c-bar with m_c + m_r columns)
};

InputMatrices input_matrices(std::span<const RegionSpec> regions, const WellLayout& wells,
                             const PhysicalParams& params);

/// Weak-form stiffness of a variable-diffusivity field in the sine basis plus
/// the per-well source scaling 1 / (beta(x_w) D_z).
struct GalerkinOperator {
  Eigen::MatrixXd stiffness;       // A, K x K, symmetric negative definite
  Eigen::VectorXd fixed_scale;     // 1/(MPa km) per fixed well
  Eigen::VectorXd control_scale;   // 1/(MPa km) per controlled well
};

/**
 * @brief A_kj = -int c_hy(x) grad(phi_k) . grad(phi_j) dx by tensor Gauss
 * quadrature on the field's cached grid.
 *
 * Throws DomainError when the assembled operator is not negative definite,
 * which signals an under-resolved quadrature grid.
 */
GalerkinOperator assemble_galerkin_operator(const HeterogeneityField& field, const SpectralBasis& basis,
                                            const PhysicalParams& params, const WellLayout& wells);

/**
 * @brief Right-hand side of the truncated modal diffusion equation.
 *
 * Homogeneous: zdot_k = -c_hy lambda_k z_k + (Phi_s Q_s + Phi_c Q_c)_k / (beta D_z).
 * Heterogeneous: zdot = A z + Phi_s (S_s o Q_s) + Phi_c (S_c o Q_c).
 * Fluxes are given in m^3/hr and converted to km^3/hr here.
 */
class ModalDiffusion {
 public:
  static ModalDiffusion homogeneous(const SpectralBasis& basis, const PhysicalParams& params,
                                    const WellLayout& wells);
  static ModalDiffusion heterogeneous(const GalerkinOperator& op, const SpectralBasis& basis,
                                      const WellLayout& wells);

  void rhs(const Eigen::VectorXd& z, const Eigen::VectorXd& q_fixed, const Eigen::VectorXd& q_control,
           Eigen::VectorXd& zdot) const;
  Eigen::VectorXd rhs(const Eigen::VectorXd& z, const Eigen::VectorXd& q_fixed,
                      const Eigen::VectorXd& q_control) const;

  bool heterogeneous() const { return dense_; }
  std::size_t size() const { return static_cast<std::size_t>(fixed_load_.rows()); }
  /// Diagonal (homogeneous) or dense (heterogeneous) linear part as a matrix.
  Eigen::MatrixXd linear_operator() const;
  const Eigen::MatrixXd& fixed_load() const { return fixed_load_; }
  const Eigen::MatrixXd& control_load() const { return control_load_; }

 private:
  ModalDiffusion() = default;

  bool dense_ = false;
  Eigen::VectorXd decay_;     // -c_hy lambda_k (homogeneous)
  Eigen::MatrixXd operator_;  // A (heterogeneous)
  Eigen::MatrixXd fixed_load_;    // K x m_s, per m^3/hr
  Eigen::MatrixXd control_load_;  // K x m_c, per m^3/hr
};

/// Region mean of u_t: (1/area) sum_k zdot_k int_region phi_k.
double region_pressure_rate(const Eigen::VectorXd& zdot, const RegionSpec& region, const SpectralBasis& basis);

/// Row i = region_integrals(region_i) / area_i, so rates = averager * zdot.
Eigen::MatrixXd region_averaging_matrix(std::span<const RegionSpec> regions, const SpectralBasis& basis);

inline constexpr double kLogRateGuard = 700.0;

/**
 * @brief Log seismicity-rate dynamics,
 * hdot_i = sr_gain * rate_i - (exp(h_i) - 1) / t_a.
 *
 * Throws OverflowGuardError if any h_i exceeds kLogRateGuard.
 */
void sr_rhs(const Eigen::VectorXd& h, const Eigen::VectorXd& mean_rates, const PhysicalParams& params,
            Eigen::VectorXd& hdot);
Eigen::VectorXd sr_rhs(const Eigen::VectorXd& h, const Eigen::VectorXd& mean_rates,
                       const PhysicalParams& params);

/// Rdot = (R / t_a)(tau_dot / tau0_dot - R). DomainError for R <= 0.
double sr_rhs_direct(double rate, double tau_dot, const PhysicalParams& params);

}  // namespace seisctl
