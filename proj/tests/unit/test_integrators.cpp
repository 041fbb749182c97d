#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "seisctl/integrators.hpp"

namespace seisctl {
namespace {

const OdeRhs kDecay = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { d = -y; };

TEST(Rk23, ExponentialDecay) {
  Rk23Options opt;
  opt.rtol = 1e-9;
  opt.atol = 1e-12;
  const OdeResult r = integrate_rk23(kDecay, Eigen::VectorXd::Ones(1), 0.0, 5.0, opt);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.final_time, 5.0);
  EXPECT_NEAR(r.final_state(0), std::exp(-5.0), 1e-8);
}

TEST(Rk23, ErrorShrinksWithTolerance) {
  double prev = 1.0;
  for (double tol : {1e-4, 1e-6, 1e-8}) {
    Rk23Options opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-3;
    const OdeResult r = integrate_rk23(kDecay, Eigen::VectorXd::Ones(1), 0.0, 3.0, opt);
    const double err = std::abs(r.final_state(0) - std::exp(-3.0));
    EXPECT_LT(err, prev);
    EXPECT_LT(err, 100.0 * tol);
    prev = err;
  }
}

TEST(Rk23, LinearSystemMatchesMatrixExponential) {
  Eigen::Matrix3d a;
  a << -2.0, 0.5, 0.1, 0.5, -1.0, 0.3, 0.1, 0.3, -0.5;
  const OdeRhs rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { d = a * y; };
  const Eigen::Vector3d y0(1.0, -2.0, 0.5);
  Rk23Options opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-13;
  const std::vector<double> outs{0.5, 1.0, 2.5, 4.0};
  const OdeResult r = integrate_rk23(rhs, y0, 0.0, 4.0, opt, outs);
  ASSERT_EQ(r.times.size(), outs.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(a);
  for (std::size_t i = 0; i < outs.size(); ++i) {
    EXPECT_EQ(r.times[i], outs[i]);
    const Eigen::Vector3d exact = eig.eigenvectors() *
                                  (eig.eigenvalues() * outs[i]).array().exp().matrix().asDiagonal() *
                                  eig.eigenvectors().transpose() * y0;
    EXPECT_LT((r.states[i] - exact).norm(), 1e-7);
  }
}

TEST(Rk23, DenseOutputOnOscillator) {
  const OdeRhs rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) {
    d.resize(2);
    d << y(1), -y(0);
  };
  std::vector<double> outs;
  for (int i = 0; i <= 100; ++i) outs.push_back(0.1 * i);
  Rk23Options opt;
  opt.rtol = 1e-9;
  opt.atol = 1e-12;
  opt.max_step = 1.0;
  const OdeResult r = integrate_rk23(rhs, Eigen::Vector2d(0.0, 1.0), 0.0, 10.0, opt, outs);
  ASSERT_EQ(r.times.size(), outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i) EXPECT_NEAR(r.states[i](0), std::sin(outs[i]), 1e-6);
}

TEST(Rk23, ObserverSeesEveryAcceptedStep) {
  std::size_t calls = 0;
  double last = 0.0;
  const StepObserver obs = [&](double t, const Eigen::VectorXd&) {
    EXPECT_GT(t, last);
    last = t;
    ++calls;
  };
  const OdeResult r = integrate_rk23(kDecay, Eigen::VectorXd::Ones(1), 0.0, 2.0, Rk23Options{}, {}, obs);
  EXPECT_EQ(calls, r.accepted_steps);
  EXPECT_EQ(last, 2.0);
}

TEST(Rk23, MaxStepIsRespected) {
  Rk23Options opt;
  opt.max_step = 0.25;
  opt.rtol = 1e-3;
  double prev = 0.0, widest = 0.0;
  const StepObserver obs = [&](double t, const Eigen::VectorXd&) {
    widest = std::max(widest, t - prev);
    prev = t;
  };
  const OdeRhs flat = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { d = Eigen::VectorXd::Zero(y.size()); };
  static_cast<void>(integrate_rk23(flat, Eigen::VectorXd::Ones(1), 0.0, 10.0, opt, {}, obs));
  EXPECT_LE(widest, 0.25 + 1e-12);
}

TEST(Rk23, RhsExceptionIsReported) {
  const OdeRhs bad = [](double t, const Eigen::VectorXd& y, Eigen::VectorXd& d) {
    if (t > 1.0) throw std::runtime_error("boom");
    d = -y;
  };
  const OdeResult r = integrate_rk23(bad, Eigen::VectorXd::Ones(1), 0.0, 3.0, Rk23Options{}, std::vector<double>{0.5, 2.0});
  EXPECT_EQ(r.status, OdeStatus::kRhsFailure);
  EXPECT_NE(r.message.find("boom"), std::string::npos);
  EXPECT_EQ(r.times.size(), 1u);
  EXPECT_LE(r.final_time, 1.0 + 1e-9);
}

TEST(Rk23, NonFiniteRhsFailsCleanly) {
  const OdeRhs nan = [](double t, const Eigen::VectorXd& y, Eigen::VectorXd& d) {
    d = -y;
    if (t > 0.5) d(0) = std::numeric_limits<double>::quiet_NaN();
  };
  const OdeResult r = integrate_rk23(nan, Eigen::VectorXd::Ones(1), 0.0, 1.0, Rk23Options{});
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(std::isfinite(r.final_state(0)));
}

TEST(Rk4, FourthOrderConvergence) {
  auto err = [](double dt) {
    const OdeResult r = integrate_rk4(kDecay, Eigen::VectorXd::Ones(1), 0.0, 2.0, dt);
    return std::abs(r.final_state(0) - std::exp(-2.0));
  };
  const double e1 = err(0.1), e2 = err(0.05);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.1);
}

TEST(Rk4, LandsOnOutputTimes) {
  const std::vector<double> outs{0.0, 0.33, 1.0, 1.234};
  const OdeResult r = integrate_rk4(kDecay, Eigen::VectorXd::Ones(1), 0.0, 1.5, 0.1, outs);
  ASSERT_EQ(r.times, outs);
  for (std::size_t i = 0; i < outs.size(); ++i) EXPECT_NEAR(r.states[i](0), std::exp(-outs[i]), 1e-6);
  EXPECT_EQ(r.final_time, 1.5);
}

TEST(Rk4, BlowUpIsReported) {
  const OdeRhs grow = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { d = y.array().square(); };
  const OdeResult r = integrate_rk4(grow, Eigen::VectorXd::Ones(1), 0.0, 5.0, 0.01);
  EXPECT_EQ(r.status, OdeStatus::kNonFinite);
}

TEST(Rk4, RepeatedRunsAreBitIdentical) {
  const OdeRhs rhs = [](double t, const Eigen::VectorXd& y, Eigen::VectorXd& d) {
    d = -y * std::cos(t) + Eigen::VectorXd::Constant(y.size(), std::sin(3.0 * t));
  };
  const OdeResult a = integrate_rk4(rhs, Eigen::Vector2d(1.0, -1.0), 0.0, 7.0, 0.013);
  const OdeResult b = integrate_rk4(rhs, Eigen::Vector2d(1.0, -1.0), 0.0, 7.0, 0.013);
  EXPECT_EQ(a.final_state, b.final_state);
  EXPECT_EQ(a.accepted_steps, b.accepted_steps);
}

}  // namespace
}  // namespace seisctl
