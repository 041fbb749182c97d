#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seisctl/errors.hpp"
#include "seisctl/heterogeneity.hpp"
#include "seisctl/reservoir.hpp"
#include "seisctl/scenario.hpp"

namespace seisctl {
namespace {

const PhysicalParams kParams{};

TEST(PhysicalParams, DefaultsAndValidation) {
  EXPECT_DOUBLE_EQ(kParams.c_hy, 3.6e-4);
  EXPECT_DOUBLE_EQ(kParams.beta, 1.2e-4);
  EXPECT_DOUBLE_EQ(kParams.friction, 0.5);
  EXPECT_DOUBLE_EQ(kParams.tau0_dot, 1e-6);
  EXPECT_DOUBLE_EQ(kParams.t_a, 500100.0);
  EXPECT_DOUBLE_EQ(kParams.length, 5.0);
  EXPECT_DOUBLE_EQ(kParams.depth, 0.1);
  EXPECT_NO_THROW(kParams.validate());
  PhysicalParams bad = kParams;
  bad.beta = -1.0;
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(InputMatrix, EntriesFollowRegionMembership) {
  const std::vector<RegionSpec> regions = default_regions();
  const std::vector<Point> wells{{1.25, 2.5}, {2.75, 2.5}, {2.5, 1.25}};
  const Eigen::MatrixXd B = input_matrix(regions, wells, kParams);
  ASSERT_EQ(B.rows(), 2);
  ASSERT_EQ(B.cols(), 3);
  const double gain = 0.5 / (500100.0 * 1e-6);
  EXPECT_NEAR(B(0, 0), gain / (1.2e-4 * 8.0 * 0.1), 1e-9);
  EXPECT_EQ(B(1, 0), 0.0);
  EXPECT_EQ(B(0, 1), 0.0);
  EXPECT_NEAR(B(1, 1), gain / (1.2e-4 * 1.0 * 0.1), 1e-9);
  EXPECT_NEAR(B(0, 2), B(0, 0), 1e-12);
}

TEST(InputMatrix, WellOnRegionEdgeThrows) {
  const std::vector<RegionSpec> regions = default_regions();
  const std::vector<Point> wells{{2.0, 2.5}};
  EXPECT_THROW(static_cast<void>(input_matrix(regions, wells, kParams)), DomainError);
}

TEST(ModalDiffusion, SteadyStateMatchesClosedForm) {
  const SpectralBasis basis = SpectralBasis::lowest(5.0, 16, 160);
  const WellLayout wells{{{2.5, 2.5}}, {}};
  const ModalDiffusion dyn = ModalDiffusion::homogeneous(basis, kParams, wells);
  Eigen::VectorXd z_inf(160);
  for (int k = 0; k < 160; ++k) {
    const Mode& m = basis.mode(static_cast<std::size_t>(k));
    z_inf(k) = eval_eigenfunction(m, {2.5, 2.5}, 5.0) * 32.0 * 1e-9 / (1.2e-4 * 0.1 * 3.6e-4 * m.lambda);
  }
  const Eigen::VectorXd q_fixed = Eigen::VectorXd::Constant(1, 32.0);
  const Eigen::VectorXd zdot = dyn.rhs(z_inf, q_fixed, Eigen::VectorXd());
  EXPECT_LT(zdot.cwiseAbs().maxCoeff(), 1e-12 * z_inf.cwiseAbs().maxCoeff());
  // And z_inf solves L z + b = 0 for the explicit operator.
  const Eigen::VectorXd b = dyn.fixed_load() * q_fixed;
  const Eigen::VectorXd solved = dyn.linear_operator().fullPivLu().solve(-b);
  EXPECT_LT((solved - z_inf).norm() / z_inf.norm(), 1e-10);
}

TEST(ModalDiffusion, UnforcedEnergyDecays) {
  const SpectralBasis basis = SpectralBasis::lowest(5.0, 6, 20);
  const ModalDiffusion dyn = ModalDiffusion::homogeneous(basis, kParams, {});
  Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(20, -1.0, 2.0);
  double energy = z.squaredNorm();
  auto f = [&](double, const Eigen::VectorXd& y) { return dyn.rhs(y, Eigen::VectorXd(), Eigen::VectorXd()); };
  for (int i = 0; i < 200; ++i) {
    z = oracle::rk4_step(f, 0.0, z, 50.0);
    const double next = z.squaredNorm();
    EXPECT_LT(next, energy);
    energy = next;
  }
}

TEST(Galerkin, ConstantFieldReducesToHomogeneousOperator) {
  const SpectralBasis basis = SpectralBasis::lowest(5.0, 8, 30);
  const HeterogeneityField field(LogBumpField::constant(1.0), LogBumpField::constant(1.0), 5.0, 16);
  const WellLayout wells{{{2.5, 2.5}}, {{1.25, 2.5}}};
  const GalerkinOperator op = assemble_galerkin_operator(field, basis, kParams, wells);
  const Eigen::MatrixXd expected = (-kParams.c_hy * basis.eigenvalues()).asDiagonal();
  EXPECT_LT((op.stiffness - expected).cwiseAbs().maxCoeff(), 1e-10 * expected.cwiseAbs().maxCoeff());
  EXPECT_NEAR(op.fixed_scale(0), 1.0 / (kParams.beta * kParams.depth), 1e-6);
  EXPECT_NEAR(op.control_scale(0), 1.0 / (kParams.beta * kParams.depth), 1e-6);

  const ModalDiffusion het = ModalDiffusion::heterogeneous(op, basis, wells);
  const ModalDiffusion hom = ModalDiffusion::homogeneous(basis, kParams, wells);
  const Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(30, 0.1, 0.4);
  const Eigen::VectorXd qs = Eigen::VectorXd::Constant(1, 32.0);
  const Eigen::VectorXd qc = Eigen::VectorXd::Constant(1, -7.0);
  const Eigen::VectorXd a = het.rhs(z, qs, qc);
  const Eigen::VectorXd b = hom.rhs(z, qs, qc);
  EXPECT_LT((a - b).norm(), 1e-10 * b.norm());
}

TEST(Galerkin, HeterogeneousOperatorIsSymmetricNegativeDefinite) {
  HeterogeneitySpec spec;
  spec.enabled = true;
  const HeterogeneityField field = generate_heterogeneity(spec, 5.0);
  const SpectralBasis basis = SpectralBasis::lowest(5.0, 8, 40);
  const GalerkinOperator op = assemble_galerkin_operator(field, basis, kParams, {});
  EXPECT_LT((op.stiffness - op.stiffness.transpose()).cwiseAbs().maxCoeff(),
            1e-12 * op.stiffness.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.stiffness);
  EXPECT_LT(eig.eigenvalues().maxCoeff(), 0.0);
}

TEST(RegionAveraging, MatchesPerRegionRate) {
  const SpectralBasis basis = SpectralBasis::lowest(5.0, 8, 40);
  const std::vector<RegionSpec> regions = default_regions();
  const Eigen::MatrixXd avg = region_averaging_matrix(regions, basis);
  const Eigen::VectorXd zdot = Eigen::VectorXd::LinSpaced(40, -1.0, 1.0);
  const Eigen::VectorXd rates = avg * zdot;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    EXPECT_NEAR(rates(static_cast<Eigen::Index>(i)), region_pressure_rate(zdot, regions[i], basis), 1e-14);
  }
}

TEST(SeismicityRate, EquilibriaOfLogForm) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  EXPECT_LT(sr_rhs(zero, zero, kParams).cwiseAbs().maxCoeff(), 1e-300);
  // Constant pressurisation p gives h* = log(1 + sr_gain p t_a).
  Eigen::VectorXd p(2);
  p << 2e-6, 8e-6;
  Eigen::VectorXd h(2);
  for (int i = 0; i < 2; ++i) h(i) = std::log1p(kParams.sr_gain() * p(i) * kParams.t_a);
  EXPECT_LT(sr_rhs(h, p, kParams).cwiseAbs().maxCoeff(), 1e-18);
  // Holding R = 5 needs 4 tau0_dot / f of mean pressurisation.
  EXPECT_NEAR(std::exp(h(1)), 1.0 + kParams.friction * 8e-6 / kParams.tau0_dot, 1e-12);
}

TEST(SeismicityRate, OverflowGuardThrows) {
  Eigen::VectorXd h = Eigen::VectorXd::Constant(1, 701.0);
  EXPECT_THROW(static_cast<void>(sr_rhs(h, Eigen::VectorXd::Zero(1), kParams)), OverflowGuardError);
}

TEST(SeismicityRate, DirectFormAgreesWithLogFormPointwise) {
  for (double R : {0.3, 1.0, 2.0, 40.0}) {
    for (double rate : {-1e-6, 0.0, 3e-6}) {
      const double tau_dot = kParams.tau0_dot + kParams.friction * rate;
      const double direct = sr_rhs_direct(R, tau_dot, kParams);
      const Eigen::VectorXd hdot =
          sr_rhs(Eigen::VectorXd::Constant(1, std::log(R)), Eigen::VectorXd::Constant(1, rate), kParams);
      EXPECT_NEAR(direct, R * hdot(0), 1e-15 + 1e-12 * std::abs(direct));
    }
  }
  EXPECT_THROW(static_cast<void>(sr_rhs_direct(0.0, 1e-6, kParams)), DomainError);
}

TEST(SeismicityRate, CoIntegratedFormsAgree) {
  // R-form and h-form driven by the same time-varying pressurisation rate.
  auto rate = [](double t) { return 5e-6 * std::sin(t / 40.0) + 3e-6; };
  auto f = [&](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(2);
    d(0) = sr_rhs_direct(y(0), kParams.tau0_dot + kParams.friction * rate(t), kParams);
    d(1) = sr_rhs(y.tail(1), Eigen::VectorXd::Constant(1, rate(t)), kParams)(0);
    return d;
  };
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    y = oracle::rk4_step(f, i * 1.0, y, 1.0);
    worst = std::max(worst, std::abs(y(0) - std::exp(y(1))));
  }
  EXPECT_LT(worst, 1e-8);
}

}  // namespace
}  // namespace seisctl
