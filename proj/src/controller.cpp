#include "seisctl/controller.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "seisctl/errors.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

double signed_power(double v, double gamma, double epsilon) {
  if (gamma < 0.0) throw DomainError("signed_power needs gamma >= 0");
  if (v == 0.0) return 0.0;
  const double a = std::abs(v);
  const double sgn = epsilon > 0.0 ? v / (a + epsilon) : (v > 0.0 ? 1.0 : -1.0);
  return (gamma == 0.0 ? 1.0 : std::pow(a, gamma)) * sgn;
}

Eigen::VectorXd signed_power(const Eigen::VectorXd& v, double gamma, double epsilon) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = signed_power(v(i), gamma, epsilon);
  return out;
}

void ControllerGains::validate() const {
  if (k1.rows() != k1.cols() || k2.rows() != k2.cols() || k1.rows() != k2.rows() || k1.rows() == 0) {
    throw DomainError("K1 and K2 must be square matrices of the same size");
  }
  if (!(exponent >= -1.0 && exponent <= 0.0)) throw DomainError("homogeneity exponent l must lie in [-1, 0]");
  for (Eigen::Index i = 0; i < k1.rows(); ++i) {
    for (Eigen::Index j = 0; j < k1.cols(); ++j) {
      if (i == j && !(k1(i, j) > 0.0)) throw DomainError("K1 diagonal entries must be positive");
      if (i != j && k1(i, j) != 0.0) throw DomainError("K1 must be diagonal");
    }
  }
  // Positive definite in the quadratic-form sense: symmetric part is PD.
  const Eigen::MatrixXd sym = 0.5 * (k2 + k2.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) throw DomainError("K2 must be positive definite");
}

ReferenceSample reference(double t, const ReferenceSpec& spec) {
  if (t < 0.0) throw DomainError("reference time must be non-negative");
  if (!(spec.ramp > 0.0)) throw DomainError("reference ramp duration must be positive");
  ReferenceSample out;
  const double T = spec.ramp;
  if (t >= T) {
    out.r = spec.target;
    out.rdot = Eigen::VectorXd::Zero(spec.target.size());
    out.rddot = Eigen::VectorXd::Zero(spec.target.size());
    return out;
  }
  const double s = t / T;
  const double s2 = s * s;
  const double shape = s2 * s * (10.0 - 15.0 * s + 6.0 * s2);
  const double dshape = 30.0 * s2 * (1.0 - 2.0 * s + s2) / T;
  const double ddshape = 60.0 * s * (1.0 - 3.0 * s + 2.0 * s2) / (T * T);
  out.r = shape * spec.target;
  out.rdot = dshape * spec.target;
  out.rddot = ddshape * spec.target;
  return out;
}

std::pair<double, double> reference_derivative_bounds(double target, double ramp) {
  const double a = std::abs(target);
  return {a * 15.0 / (8.0 * ramp), a * 10.0 / (std::sqrt(3.0) * ramp * ramp)};
}

NominalModel::NominalModel(Eigen::MatrixXd b0, double bias) : b0_(std::move(b0)), bias_(bias), lu_(b0_) {
  if (b0_.rows() != b0_.cols() || b0_.rows() == 0) throw DomainError("B0 must be a non-empty square matrix");
  if (!lu_.isInvertible()) throw DomainError("nominal matrix B0 is singular");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b0_);
  const auto& sv = svd.singularValues();
  condition_ = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(condition_)) throw DomainError("nominal matrix B0 is singular");
}

NominalModel nominal_b0(std::span<const RegionSpec> regions, std::span<const Point> control_wells,
                        const PhysicalParams& true_params, double bias,
                        const std::optional<Eigen::MatrixXd>& null_basis) {
  if (!(bias > 0.0)) throw DomainError("nominal bias must be positive");
  // depth is scaled with the rest, so each V_i = area * D_z carries the bias too.
  const PhysicalParams nominal = true_params.scaled(bias);
  const Eigen::MatrixXd bbar = input_matrix(regions, control_wells, nominal);
  if (null_basis) {
    if (null_basis->rows() != bbar.cols()) throw DomainError("null-space basis does not match the control wells");
    return NominalModel(bbar * *null_basis, bias);
  }
  return NominalModel(bbar, bias);
}

Eigen::VectorXd control_law(const Eigen::VectorXd& error, const Eigen::VectorXd& nu, const Eigen::VectorXd& rdot,
                            const NominalModel& b0, const ControllerGains& gains, double epsilon) {
  const Eigen::VectorXd v = -gains.k1 * signed_power(error, gains.proportional_power(), epsilon) + nu + rdot;
  return units::km3_to_m3(1.0) * b0.solve(v);
}

Eigen::VectorXd integral_rhs(const Eigen::VectorXd& error, const ControllerGains& gains, double epsilon) {
  return -gains.k2 * signed_power(error, gains.integral_power(), epsilon);
}

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& w) {
  const Eigen::Index rows = w.rows();
  const Eigen::Index cols = w.cols();
  if (rows == 0 || cols <= rows) throw DomainError("W must have more columns than rows");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w.transpose());
  if (qr.rank() != rows) throw DomainError("W is rank deficient");
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd basis = q.rightCols(cols - rows);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      if (std::abs(basis(i, j)) > 1e-12) {
        if (basis(i, j) < 0.0) basis.col(j) *= -1.0;
        break;
      }
    }
  }
  return basis;
}

DemandConstraint DemandConstraint::from_weights(const Eigen::MatrixXd& w) {
  DemandConstraint c;
  c.weights = w;
  c.null_basis = null_space_basis(w);
  const Eigen::MatrixXd gram = w * w.transpose();
  c.particular = w.transpose() * gram.ldlt().solve(Eigen::MatrixXd::Identity(w.rows(), w.rows()));
  return c;
}

Eigen::VectorXd demand_projection(const Eigen::VectorXd& q_control, const DemandConstraint& constraint,
                                  const Eigen::VectorXd& demand) {
  if (q_control.size() != constraint.null_basis.cols() || demand.size() != constraint.weights.rows()) {
    throw DomainError("demand projection dimensions are inconsistent");
  }
  return constraint.null_basis * q_control + constraint.particular * demand;
}

}  // namespace seisctl
