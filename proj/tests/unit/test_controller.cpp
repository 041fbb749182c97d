#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "seisctl/controller.hpp"
#include "seisctl/errors.hpp"
#include "seisctl/scenario.hpp"

namespace seisctl {
namespace {

ControllerGains default_gains() {
  ControllerGains g;
  g.k1 = Eigen::Vector2d(1.5e-2, 6.7e-2).asDiagonal();
  g.k2 = Eigen::Vector2d(1.1e-4, 2.2e-3).asDiagonal();
  g.exponent = -0.6;
  return g;
}

TEST(SignedPower, BasicValues) {
  EXPECT_DOUBLE_EQ(signed_power(4.0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(signed_power(-4.0, 0.5), -2.0);
  EXPECT_EQ(signed_power(0.0, 0.0), 0.0);
  EXPECT_EQ(signed_power(-3.0, 0.0), -1.0);
  EXPECT_EQ(signed_power(3.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(signed_power(-2.0, 1.0), -2.0);
  EXPECT_THROW(static_cast<void>(signed_power(1.0, -0.5)), DomainError);
}

TEST(SignedPower, OddAndMonotone) {
  for (double gamma : {0.0, 0.25, 0.625, 1.0}) {
    double prev = signed_power(-5.0, gamma);
    for (double v = -4.9; v <= 5.0; v += 0.1) {
      EXPECT_DOUBLE_EQ(signed_power(v, gamma), -signed_power(-v, gamma));
      const double cur = signed_power(v, gamma);
      EXPECT_GE(cur, prev);
      prev = cur;
    }
  }
}

TEST(SignedPower, BoundaryLayerSmoothsSign) {
  EXPECT_NEAR(signed_power(1e-3, 0.0, 1e-3), 0.5, 1e-15);
  EXPECT_NEAR(signed_power(-1.0, 0.0, 1e-9), -1.0, 1e-8);
}

TEST(Gains, ExponentPowersAndValidation) {
  ControllerGains g = default_gains();
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.proportional_power(), 1.0 / 1.6);
  EXPECT_DOUBLE_EQ(g.integral_power(), 0.4 / 1.6);
  g.exponent = -1.0;
  EXPECT_DOUBLE_EQ(g.proportional_power(), 0.5);
  EXPECT_DOUBLE_EQ(g.integral_power(), 0.0);
  g.exponent = 0.1;
  EXPECT_THROW(g.validate(), DomainError);
  g = default_gains();
  g.k1(0, 0) = -1.0;
  EXPECT_THROW(g.validate(), DomainError);
  g = default_gains();
  g.k2(1, 1) = 0.0;
  EXPECT_THROW(g.validate(), DomainError);
}

TEST(Reference, EndpointsAndDerivatives) {
  ReferenceSpec spec{Eigen::Vector2d(0.0, std::log(5.0)), 730.0};
  const ReferenceSample a = reference(0.0, spec);
  EXPECT_EQ(a.r.norm(), 0.0);
  EXPECT_EQ(a.rdot.norm(), 0.0);
  const ReferenceSample b = reference(730.0, spec);
  EXPECT_NEAR(b.r(1), std::log(5.0), 1e-15);
  EXPECT_NEAR(b.rdot(1), 0.0, 1e-15);
  const ReferenceSample c = reference(2000.0, spec);
  EXPECT_EQ(c.r(1), std::log(5.0));
  EXPECT_EQ(c.rdot(1), 0.0);
  EXPECT_EQ(c.rddot(1), 0.0);

  // Central differences of r and rdot.
  for (double t : {50.0, 200.0, 365.0, 600.0}) {
    const double h = 1e-3;
    const ReferenceSample p = reference(t + h, spec), m = reference(t - h, spec), s = reference(t, spec);
    EXPECT_NEAR(s.rdot(1), (p.r(1) - m.r(1)) / (2 * h), 1e-9);
    EXPECT_NEAR(s.rddot(1), (p.rdot(1) - m.rdot(1)) / (2 * h), 1e-11);
  }
}

TEST(Reference, DerivativeBoundsAreTight) {
  const double target = std::log(5.0), ramp = 730.0;
  const auto [d1, d2] = reference_derivative_bounds(target, ramp);
  ReferenceSpec spec{Eigen::VectorXd::Constant(1, target), ramp};
  double max1 = 0.0, max2 = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= 73000; ++i) {
    const ReferenceSample s = reference(i * 0.01, spec);
    max1 = std::max(max1, std::abs(s.rdot(0)));
    max2 = std::max(max2, std::abs(s.rddot(0)));
    EXPECT_GE(s.r(0), prev - 1e-15);
    EXPECT_LE(s.r(0), target + 1e-15);
    prev = s.r(0);
  }
  EXPECT_LE(max1, d1 * (1 + 1e-12));
  EXPECT_LE(max2, d2 * (1 + 1e-12));
  EXPECT_NEAR(max1 / d1, 1.0, 1e-6);
  EXPECT_NEAR(max2 / d2, 1.0, 1e-6);
  EXPECT_THROW(static_cast<void>(reference(-1.0, spec)), DomainError);
}

TEST(NominalModel, BiasScalesInputMatrix) {
  const std::vector<RegionSpec> regions = default_regions();
  const std::vector<Point> wells{{1.25, 2.5}, {2.75, 2.5}};
  const PhysicalParams params;
  const Eigen::MatrixXd truth = input_matrix(regions, wells, params);
  const NominalModel nominal = nominal_b0(regions, wells, params, 1.1);
  // f / (t_a tau0_dot beta D_z) with all five scaled by 1.1.
  const double ratio = 1.1 / std::pow(1.1, 4);
  EXPECT_NEAR(nominal.matrix()(0, 0) / truth(0, 0), ratio, 1e-14);
  EXPECT_NEAR(nominal.matrix()(1, 1) / truth(1, 1), ratio, 1e-14);
  EXPECT_EQ(nominal.matrix()(0, 1), 0.0);
  EXPECT_NEAR(nominal.condition_number(), truth(1, 1) / truth(0, 0), 1e-9);
}

TEST(NominalModel, SingularMatrixThrows) {
  const std::vector<RegionSpec> regions = default_regions();
  const std::vector<Point> wells{{1.25, 2.5}, {3.5, 2.5}};  // both in region 1
  EXPECT_THROW(static_cast<void>(nominal_b0(regions, wells, PhysicalParams{}, 1.1)), DomainError);
}

TEST(ControlLaw, SolvesNominalSystem) {
  const std::vector<RegionSpec> regions = default_regions();
  const std::vector<Point> wells{{1.25, 2.5}, {2.75, 2.5}};
  const NominalModel b0 = nominal_b0(regions, wells, PhysicalParams{}, 1.1);
  const ControllerGains g = default_gains();
  const Eigen::Vector2d e(0.3, -0.02), nu(1e-5, -2e-5), rdot(1e-4, 2e-4);
  const Eigen::VectorXd q = control_law(e, nu, rdot, b0, g);
  const double p = 1.0 / 1.6;
  Eigen::Vector2d expected_rhs;
  for (int i = 0; i < 2; ++i) {
    const double sp = std::copysign(std::pow(std::abs(e(i)), p), e(i));
    expected_rhs(i) = -g.k1(i, i) * sp + nu(i) + rdot(i);
  }
  // q is in m^3/hr; B0 acts on km^3/hr.
  EXPECT_LT((b0.matrix() * q * 1e-9 - expected_rhs).norm(), 1e-12 * expected_rhs.norm());

  const Eigen::VectorXd nudot = integral_rhs(e, g);
  const double pi = 0.4 / 1.6;
  EXPECT_NEAR(nudot(0), -1.1e-4 * std::pow(0.3, pi), 1e-18);
  EXPECT_NEAR(nudot(1), 2.2e-3 * std::pow(0.02, pi), 1e-18);
}

TEST(NullSpace, UnitRowWeights) {
  Eigen::MatrixXd w(1, 3);
  w << 1.0, 0.0, 0.0;
  const Eigen::MatrixXd n = null_space_basis(w);
  ASSERT_EQ(n.rows(), 3);
  ASSERT_EQ(n.cols(), 2);
  EXPECT_LT((w * n).norm(), 1e-15);
  EXPECT_LT((n.transpose() * n - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-14);
  EXPECT_LT(n.row(0).norm(), 1e-15);
  for (Eigen::Index c = 0; c < n.cols(); ++c) {
    for (Eigen::Index r = 0; r < n.rows(); ++r) {
      if (std::abs(n(r, c)) > 1e-12) {
        EXPECT_GT(n(r, c), 0.0);
        break;
      }
    }
  }
}

TEST(DemandAllocation, ParticularSolutionOfDefaultWeights) {
  Eigen::MatrixXd w(1, 3);
  w << 1.0, 1.01, 1.0;
  const DemandConstraint c = DemandConstraint::from_weights(w);
  const Eigen::VectorXd q = demand_projection(Eigen::VectorXd::Zero(2), c, Eigen::VectorXd::Constant(1, -32.0));
  const double s = -32.0 / (1.0 + 1.01 * 1.01 + 1.0);
  EXPECT_NEAR(q(0), s, 1e-12);
  EXPECT_NEAR(q(1), 1.01 * s, 1e-12);
  EXPECT_NEAR(q(2), s, 1e-12);
  EXPECT_NEAR(q(0), -10.5957, 5e-5);
  EXPECT_NEAR(q(1), -10.7016, 5e-5);
}

TEST(DemandAllocation, ExactForRandomConstraints) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> dims(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int mr = dims(rng), mc = dims(rng);
    Eigen::MatrixXd w(mr, mc + mr);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = g(rng);
    Eigen::VectorXd qc(mc), d(mr);
    for (int i = 0; i < mc; ++i) qc(i) = 1e3 * g(rng);
    for (int i = 0; i < mr; ++i) d(i) = 50.0 * g(rng);
    const DemandConstraint c = DemandConstraint::from_weights(w);
    EXPECT_LT((w * c.null_basis).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::VectorXd q = demand_projection(qc, c, d);
    const double scale = 1.0 + w.cwiseAbs().maxCoeff() * q.cwiseAbs().maxCoeff();
    EXPECT_LT((w * q - d).cwiseAbs().maxCoeff(), 1e-13 * scale) << "trial " << trial;
    // The tracking part is recovered by projecting onto the null space.
    EXPECT_LT((c.null_basis.transpose() * q - qc).norm(), 1e-10 * (1.0 + qc.norm()));
  }
}

TEST(DemandAllocation, RankDeficientWeightsThrow) {
  Eigen::MatrixXd w(2, 3);
  w << 1, 2, 3, 2, 4, 6;
  EXPECT_THROW(static_cast<void>(DemandConstraint::from_weights(w)), DomainError);
}

}  // namespace
}  // namespace seisctl
