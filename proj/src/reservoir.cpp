#include "seisctl/reservoir.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "seisctl/errors.hpp"
#include "seisctl/heterogeneity.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be strictly positive");
  };
  positive(c_hy, "c_hy");
  positive(beta, "beta");
  positive(friction, "friction");
  positive(tau0_dot, "tau0_dot");
  positive(t_a, "t_a");
  positive(length, "length");
  positive(depth, "depth");
}

PhysicalParams PhysicalParams::scaled(double factor) const {
  PhysicalParams p = *this;
  p.c_hy *= factor;
  p.beta *= factor;
  p.friction *= factor;
  p.tau0_dot *= factor;
  p.t_a *= factor;
  p.length *= factor;
  p.depth *= factor;
  return p;
}

Eigen::MatrixXd input_matrix(std::span<const RegionSpec> regions, std::span<const Point> wells,
                             const PhysicalParams& params) {
  params.validate();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(regions.size()),
                                            static_cast<Eigen::Index>(wells.size()));
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const double volume = regions[i].area() * params.depth;
    if (!(volume > 0.0)) throw DomainError("region " + std::to_string(i + 1) + " has no volume");
    const double entry = params.sr_gain() / (params.beta * volume);
    for (std::size_t j = 0; j < wells.size(); ++j) {
      if (regions[i].touches_boundary(wells[j])) {
        throw DomainError("well " + std::to_string(j + 1) + " lies on the boundary of region " +
                          std::to_string(i + 1));
      }
      const int member = regions[i].membership(wells[j]);
      if (member != 0 && member != 1) {
        throw DomainError("region " + std::to_string(i + 1) + " has overlapping rectangles at well " +
                          std::to_string(j + 1));
      }
      if (member == 1) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry;
    }
  }
  return b;
}

InputMatrices input_matrices(std::span<const RegionSpec> regions, const WellLayout& wells,
                             const PhysicalParams& params) {
  return {input_matrix(regions, wells.fixed, params), input_matrix(regions, wells.controlled, params)};
}

GalerkinOperator assemble_galerkin_operator(const HeterogeneityField& field, const SpectralBasis& basis,
                                            const PhysicalParams& params, const WellLayout& wells) {
  params.validate();
  if (std::abs(field.length() - basis.length()) > 1e-12 * basis.length()) {
    throw DomainError("heterogeneity field and basis cover different domains");
  }
  const auto& nodes = field.nodes();
  const auto& weights = field.weights();
  const auto nq = static_cast<Eigen::Index>(nodes.size());
  const auto K = static_cast<Eigen::Index>(basis.size());
  const int N = basis.modes_per_axis();
  const double L = basis.length();
  const double k = std::numbers::pi / L;

  // 1D tables: s(i, n) = sin(n k x_i), c(i, n) = n k cos(n k x_i).
  Eigen::MatrixXd s1(nq, N);
  Eigen::MatrixXd c1(nq, N);
  for (Eigen::Index i = 0; i < nq; ++i) {
    for (int n = 1; n <= N; ++n) {
      s1(i, n - 1) = std::sin(n * k * nodes[static_cast<std::size_t>(i)]);
      c1(i, n - 1) = n * k * std::cos(n * k * nodes[static_cast<std::size_t>(i)]);
    }
  }

  // Rows indexed by quadrature point (ix, iy) -> ix * nq + iy.
  Eigen::MatrixXd gx(nq * nq, K);
  Eigen::MatrixXd gy(nq * nq, K);
  Eigen::VectorXd cw(nq * nq);
  const double amp = 2.0 / L;
  for (Eigen::Index ix = 0; ix < nq; ++ix) {
    for (Eigen::Index iy = 0; iy < nq; ++iy) {
      const Eigen::Index row = ix * nq + iy;
      cw(row) = params.c_hy * field.diffusivity_samples()(ix, iy) * weights[static_cast<std::size_t>(ix)] *
                weights[static_cast<std::size_t>(iy)];
      const double sw = std::sqrt(cw(row));
      for (Eigen::Index q = 0; q < K; ++q) {
        const Mode& md = basis.mode(static_cast<std::size_t>(q));
        gx(row, q) = sw * amp * c1(ix, md.n - 1) * s1(iy, md.m - 1);
        gy(row, q) = sw * amp * s1(ix, md.n - 1) * c1(iy, md.m - 1);
      }
    }
  }

  GalerkinOperator op;
  op.stiffness = Eigen::MatrixXd::Zero(K, K);
  op.stiffness.selfadjointView<Eigen::Lower>().rankUpdate(gx.transpose(), -1.0);
  op.stiffness.selfadjointView<Eigen::Lower>().rankUpdate(gy.transpose(), -1.0);
  op.stiffness = op.stiffness.selfadjointView<Eigen::Lower>();

  Eigen::LLT<Eigen::MatrixXd> llt(-op.stiffness);
  if (llt.info() != Eigen::Success) {
    throw DomainError("Galerkin operator is not negative definite; refine the quadrature grid");
  }

  auto scales = [&](const std::vector<Point>& ws) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(ws.size()));
    for (std::size_t j = 0; j < ws.size(); ++j) {
      out(static_cast<Eigen::Index>(j)) = 1.0 / (params.beta * field.compressibility_ratio(ws[j]) * params.depth);
    }
    return out;
  };
  op.fixed_scale = scales(wells.fixed);
  op.control_scale = scales(wells.controlled);
  return op;
}

ModalDiffusion ModalDiffusion::homogeneous(const SpectralBasis& basis, const PhysicalParams& params,
                                           const WellLayout& wells) {
  params.validate();
  ModalDiffusion d;
  d.dense_ = false;
  d.decay_ = -params.c_hy * basis.eigenvalues();
  const double scale = units::kKm3PerM3 / (params.beta * params.depth);
  d.fixed_load_ = scale * basis.point_load_matrix(wells.fixed);
  d.control_load_ = scale * basis.point_load_matrix(wells.controlled);
  return d;
}

ModalDiffusion ModalDiffusion::heterogeneous(const GalerkinOperator& op, const SpectralBasis& basis,
                                             const WellLayout& wells) {
  if (op.stiffness.rows() != static_cast<Eigen::Index>(basis.size()) ||
      op.fixed_scale.size() != static_cast<Eigen::Index>(wells.fixed.size()) ||
      op.control_scale.size() != static_cast<Eigen::Index>(wells.controlled.size())) {
    throw DomainError("Galerkin operator does not match basis or well layout");
  }
  ModalDiffusion d;
  d.dense_ = true;
  d.operator_ = op.stiffness;
  d.fixed_load_ = units::kKm3PerM3 * basis.point_load_matrix(wells.fixed) * op.fixed_scale.asDiagonal();
  d.control_load_ = units::kKm3PerM3 * basis.point_load_matrix(wells.controlled) * op.control_scale.asDiagonal();
  return d;
}

void ModalDiffusion::rhs(const Eigen::VectorXd& z, const Eigen::VectorXd& q_fixed, const Eigen::VectorXd& q_control,
                         Eigen::VectorXd& zdot) const {
  if (dense_) {
    zdot.noalias() = operator_ * z;
  } else {
    zdot = decay_.cwiseProduct(z);
  }
  if (q_fixed.size() > 0) zdot.noalias() += fixed_load_ * q_fixed;
  if (q_control.size() > 0) zdot.noalias() += control_load_ * q_control;
}

Eigen::VectorXd ModalDiffusion::rhs(const Eigen::VectorXd& z, const Eigen::VectorXd& q_fixed,
                                    const Eigen::VectorXd& q_control) const {
  Eigen::VectorXd out(z.size());
  rhs(z, q_fixed, q_control, out);
  return out;
}

Eigen::MatrixXd ModalDiffusion::linear_operator() const {
  if (dense_) return operator_;
  return decay_.asDiagonal();
}

double region_pressure_rate(const Eigen::VectorXd& zdot, const RegionSpec& region, const SpectralBasis& basis) {
  if (zdot.size() != static_cast<Eigen::Index>(basis.size())) {
    throw DomainError("modal vector length does not match the basis");
  }
  return basis.region_integrals(region).dot(zdot) / region.area();
}

Eigen::MatrixXd region_averaging_matrix(std::span<const RegionSpec> regions, const SpectralBasis& basis) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(regions.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < regions.size(); ++i) {
    g.row(static_cast<Eigen::Index>(i)) = basis.region_integrals(regions[i]).transpose() / regions[i].area();
  }
  return g;
}

void sr_rhs(const Eigen::VectorXd& h, const Eigen::VectorXd& mean_rates, const PhysicalParams& params,
            Eigen::VectorXd& hdot) {
  if (h.size() != mean_rates.size()) throw DomainError("log-rate and pressure-rate vectors differ in size");
  hdot.resize(h.size());
  const double gain = params.sr_gain();
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (!std::isfinite(h(i))) throw OverflowGuardError("log seismicity rate is not finite");
    if (h(i) > kLogRateGuard) {
      throw OverflowGuardError("log seismicity rate h_" + std::to_string(i + 1) + " = " + std::to_string(h(i)) +
                               " exceeds the overflow guard");
    }
    hdot(i) = gain * mean_rates(i) - std::expm1(h(i)) / params.t_a;
  }
}

Eigen::VectorXd sr_rhs(const Eigen::VectorXd& h, const Eigen::VectorXd& mean_rates, const PhysicalParams& params) {
  Eigen::VectorXd out;
  sr_rhs(h, mean_rates, params, out);
  return out;
}

double sr_rhs_direct(double rate, double tau_dot, const PhysicalParams& params) {
  if (!(rate > 0.0)) throw DomainError("seismicity rate must be positive");
  return rate / params.t_a * (tau_dot / params.tau0_dot - rate);
}

}  // namespace seisctl
