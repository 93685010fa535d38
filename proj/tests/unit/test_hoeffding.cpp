#include <gtest/gtest.h>

#include <cmath>

#include "qcopies/errors.hpp"
#include "qcopies/hoeffding.hpp"

namespace qc = qcopies;

namespace {

// Smallest t with 2 exp(-2 t h^2) <= delta, by linear search.
std::int64_t brute_required(double h, double delta) {
  std::int64_t t = 1;
  while (2.0 * std::exp(-2.0 * t * h * h) > delta) ++t;
  return t;
}

}  // namespace

TEST(Hoeffding, FailureProbabilityFormula) {
  EXPECT_NEAR(qc::failure_probability(110, 0.2), 2 * std::exp(-2 * 110 * 0.04), 1e-17);
  EXPECT_DOUBLE_EQ(qc::failure_probability(1, 0.01), 1.0);
  EXPECT_THROW(qc::failure_probability(0, 0.2), qc::DomainError);
  EXPECT_THROW(qc::failure_probability(10, 1.0), qc::DomainError);
  EXPECT_THROW(qc::failure_probability(10, 0.0), qc::DomainError);
}

TEST(Hoeffding, JointSuccessIsAProduct) {
  const std::vector<std::int64_t> t = {110, 50, 200};
  const std::vector<double> h = {0.2, 0.25, 0.1};
  double expect = 1.0;
  for (int j = 0; j < 3; ++j) expect *= 1 - 2 * std::exp(-2 * t[j] * h[j] * h[j]);
  EXPECT_NEAR(qc::joint_success(t, h), expect, 1e-15);
  const std::vector<std::int64_t> nine(9, 110);
  const std::vector<double> h9(9, 0.2);
  EXPECT_NEAR(qc::joint_success(nine, h9), std::pow(1 - 2 * std::exp(-8.8), 9), 1e-15);
}

TEST(Hoeffding, RequiredCopiesMatchesSearch) {
  for (double h : {0.05, 0.1, 0.2, 0.3, 0.5})
    for (double d : {1e-6, 1e-4, 1e-2, 0.3}) EXPECT_EQ(qc::required_copies(h, d), brute_required(h, d));
  EXPECT_EQ(qc::required_copies(0.2, 1e-4), 124);
  EXPECT_EQ(qc::required_copies(0.99, 0.99), 1);
  EXPECT_THROW(qc::required_copies(0.2, 0.0), qc::DomainError);
  EXPECT_THROW(qc::required_copies(0.2, 1.0), qc::DomainError);
}

TEST(Hoeffding, HalfwidthInvertsTheBound) {
  const double h = qc::hoeffding_halfwidth(500, 1e-3);
  EXPECT_NEAR(2 * std::exp(-2 * 500 * h * h), 1e-3, 1e-15);
}

TEST(Interval, NestsAroundThePointEstimate) {
  qc::SettingProbabilities p{4, {0.85, 0.1, 0.5, 0.93, 0.6}};
  const auto spec = qc::ConfidenceSpec::uniform(5, 0.1);
  const auto iv = qc::allocation_interval(p, spec, 0.016);
  const auto k_point = qc::variance_weights(p);
  const double denom[5] = {4, 16, 16, 16, 16};
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_LE(iv.P_minus[j], p.P[j]);
    EXPECT_GE(iv.P_plus[j], p.P[j]);
    EXPECT_GE(iv.P_minus[j], 0.0);
    EXPECT_LE(iv.P_plus[j], 1.0);
    EXPECT_LE(iv.k_minus[j], k_point[j] + 1e-15);
    EXPECT_GE(iv.k_plus[j], k_point[j] - 1e-15);
    EXPECT_LE(iv.real_t_minus[j], iv.real_t_plus[j]);
    EXPECT_LE(iv.t_minus[j], iv.t_plus[j]);
  }
  // Interval straddling 1/2 reaches the largest variance weight.
  EXPECT_NEAR(iv.k_plus[2], 0.25 / denom[2], 1e-15);
  // 0.93 + 0.1 clips at 1, so the smallest weight is zero there.
  EXPECT_DOUBLE_EQ(iv.P_plus[3], 1.0);
  EXPECT_DOUBLE_EQ(iv.k_minus[3], 0.0);
}

TEST(Interval, SpecValidation) {
  qc::ConfidenceSpec bad{{0.1, 1.0}, 1e-4, {}};
  EXPECT_THROW(bad.validate(), qc::DomainError);
  qc::ConfidenceSpec bad_delta{{0.1}, 0.0, {}};
  EXPECT_THROW(bad_delta.validate(), qc::DomainError);
}

TEST(Coverage, ParallelMatchesSerialAndBandHolds) {
  const auto rho = qc::depolarized_sc(4, 0.7);
  const std::vector<std::int64_t> counts = {50, 100, 400};
  const auto par = qc::coverage_experiment(rho, counts, 1e-2, 40, {6, 0});
  const auto ser = qc::coverage_experiment_serial(rho, counts, 1e-2, 40, {6, 0});
  ASSERT_EQ(par.size(), 3u);
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i].estimates, ser[i].estimates);
    EXPECT_NEAR(par[i].h, qc::hoeffding_halfwidth(counts[i], 1e-2), 1e-15);
    EXPECT_GE(par[i].inside_fraction, 0.95);
  }
  // All-H plus all-V mass of a depolarized SC: p + (1-p) 2/d.
  const double p = qc::depolarizing_weight_for_fidelity(4, 0.7);
  EXPECT_NEAR(par[0].true_value, p + (1 - p) * 2.0 / 16.0, 1e-12);
}
