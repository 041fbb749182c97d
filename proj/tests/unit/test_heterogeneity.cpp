#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seisctl/heterogeneity.hpp"

namespace seisctl {
namespace {

constexpr double kD = 5.0;

HeterogeneitySpec default_spec() {
  HeterogeneitySpec spec;
  spec.enabled = true;
  return spec;
}

// Spatial means recomputed on an independent 48 x 48 panel Gauss grid.
double independent_mean(const std::function<double(Point)>& f) {
  const auto [x, w] = oracle::composite(0.0, kD, 48, 5);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) sum += w[i] * w[j] * f({x[i], x[j]});
  }
  return sum / (kD * kD);
}

TEST(Heterogeneity, DiffusivityMeanHitsTarget) {
  const HeterogeneityField field = generate_heterogeneity(default_spec(), kD);
  EXPECT_NEAR(field.mean_diffusivity_ratio(), 1.08, 1e-3);
  EXPECT_NEAR(independent_mean([&](Point p) { return field.diffusivity_ratio(p); }), 1.08, 1e-3);
}

TEST(Heterogeneity, CompressibilityMeanIsOne) {
  const HeterogeneityField field = generate_heterogeneity(default_spec(), kD);
  EXPECT_NEAR(independent_mean([&](Point p) { return field.compressibility_ratio(p); }), 1.0, 1e-3);
}

TEST(Heterogeneity, RangeSpansConfiguredDecades) {
  const HeterogeneityField field = generate_heterogeneity(default_spec(), kD);
  EXPECT_NEAR(field.diffusivity().min_value(), 1e-2, 1e-12);
  EXPECT_NEAR(field.diffusivity().max_value(), 1e1, 1e-10);
  EXPECT_NEAR(field.compressibility().max_value() / field.compressibility().min_value(), 10.0, 1e-9);
  const Eigen::MatrixXd& s = field.diffusivity_samples();
  EXPECT_GE(s.minCoeff(), 1e-2 * (1.0 - 1e-12));
  EXPECT_LE(s.maxCoeff(), 1e1 * (1.0 + 1e-12));
  EXPECT_GT(s.minCoeff(), 0.0);
}

TEST(Heterogeneity, DeterministicPerSeed) {
  const HeterogeneityField a = generate_heterogeneity(default_spec(), kD);
  const HeterogeneityField b = generate_heterogeneity(default_spec(), kD);
  EXPECT_EQ(a.diffusivity_samples(), b.diffusivity_samples());
  HeterogeneitySpec other = default_spec();
  other.seed = 8;
  const HeterogeneityField c = generate_heterogeneity(other, kD);
  EXPECT_GT((a.diffusivity_samples() - c.diffusivity_samples()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Heterogeneity, ZeroRangeGivesConstantField) {
  HeterogeneitySpec spec = default_spec();
  spec.range_decades = 0.0;
  spec.beta_range_decades = 0.0;
  const HeterogeneityField field = generate_heterogeneity(spec, kD);
  EXPECT_TRUE(field.diffusivity().is_constant());
  EXPECT_TRUE(field.compressibility().is_constant());
  EXPECT_DOUBLE_EQ(field.diffusivity_ratio({1.0, 3.0}), field.diffusivity_ratio({4.0, 0.5}));
  EXPECT_DOUBLE_EQ(field.compressibility_ratio({2.5, 2.5}), 1.0);
}

TEST(Heterogeneity, ConstantFieldHasUnitShape) {
  const LogBumpField f = LogBumpField::constant(2.5);
  EXPECT_DOUBLE_EQ(f({1.0, 1.0}), 2.5);
  EXPECT_TRUE(f.is_constant());
}

}  // namespace
}  // namespace seisctl
