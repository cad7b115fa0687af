#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "spherebounds/lp_bound.hpp"
#include "spherebounds/oracle.hpp"
#include "spherebounds/polybasis.hpp"

using namespace spherebounds;

namespace {

LPBoundResult bound_at(double theta, int degree = 20) {
  LPConfig c;
  c.degree = degree;
  return lp_upper_bound(ThetaCodeAngle(theta), c);
}

}  // namespace

TEST(ThetaCodeAngle, RejectsOutOfRange) {
  EXPECT_THROW(ThetaCodeAngle(0.0), std::invalid_argument);
  EXPECT_THROW(ThetaCodeAngle(-0.1), std::invalid_argument);
  EXPECT_THROW(ThetaCodeAngle(3.2), std::invalid_argument);
  EXPECT_THROW(ThetaCodeAngle(NAN), std::invalid_argument);
  EXPECT_NO_THROW(ThetaCodeAngle(std::numbers::pi));
}

TEST(LPConfig, Validation) {
  LPConfig c;
  EXPECT_NO_THROW(c.validate());
  c.degree = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.constraint_grid = 8;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.verify_grid = c.constraint_grid * 5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(LpUpperBound, AntipodalAngle) {
  for (int d : {1, 2, 7, 20}) {
    const auto r = bound_at(std::numbers::pi, d);
    EXPECT_EQ(r.status, LpBoundStatus::Certified);
    EXPECT_NEAR(r.bound, 2.0, 1e-6) << d;
  }
}

TEST(LpUpperBound, SimplexAngleIsTight) {
  for (int d : {2, 3, 4, 10, 20}) {
    const auto r = bound_at(std::acos(-1.0 / 3.0), d);
    EXPECT_EQ(r.status, LpBoundStatus::Certified);
    EXPECT_NEAR(r.bound, 4.0, 1e-6) << d;
  }
}

TEST(LpUpperBound, KissingAngle) {
  const auto r = bound_at(std::numbers::pi / 3);
  ASSERT_EQ(r.status, LpBoundStatus::Certified);
  EXPECT_GE(r.bound, 12.8);
  EXPECT_LE(r.bound, 13.3);
  // Independent dense LP (HiGHS, same degree, 256-point grid) gives 13.158292;
  // the certified value can only sit above it.
  EXPECT_GE(r.bound, 13.158292 - 1e-6);
  EXPECT_NEAR(r.bound, 13.1583, 1e-4);
  const auto check = verify_certificate(r.certificate, 100000);
  EXPECT_LE(check.max_violation, 1e-9);
  EXPECT_GE(check.min_coeff, -1e-12);
}

TEST(LpUpperBound, OctahedronAngle) {
  const auto r = bound_at(std::numbers::pi / 2);
  ASSERT_EQ(r.status, LpBoundStatus::Certified);
  EXPECT_GE(r.bound, 6.0 - 1e-6);
  EXPECT_LE(r.bound, 10.0);
  EXPECT_NEAR(r.bound, 6.0, 1e-6);
}

TEST(LpUpperBound, IcosahedronAngle) {
  const auto r = bound_at(std::acos(1.0 / std::sqrt(5.0)));
  ASSERT_EQ(r.status, LpBoundStatus::Certified);
  EXPECT_GE(r.bound, 12.0 - 1e-6);
  EXPECT_LT(r.bound, 12.001);
}

TEST(LpUpperBound, CertificateSelfConsistency) {
  for (double theta : {0.35, 0.6, 0.9, 1.1, 1.4, 2.0, 2.6, 3.0}) {
    const auto r = bound_at(theta);
    ASSERT_EQ(r.status, LpBoundStatus::Certified) << theta;
    const auto& c = r.certificate.coeffs;
    EXPECT_EQ(c[0], 1.0);
    EXPECT_EQ(c.degree(), 20u);
    const auto check = verify_certificate(r.certificate, r.config.verify_grid);
    EXPECT_LE(check.max_violation, r.config.feasibility_tol) << theta;
    EXPECT_GE(check.min_coeff, -1e-12) << theta;
    EXPECT_NEAR(r.bound, eval_series(c, kSphereLambda, 1.0), 1e-12);
    EXPECT_GE(r.bound, 1.0);
  }
}

TEST(LpUpperBound, MonotoneInTheta) {
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 50; ++k) {
    const double theta = 0.3 + (std::numbers::pi - 0.3) * k / 50.0;
    const auto r = bound_at(theta);
    ASSERT_EQ(r.status, LpBoundStatus::Certified) << theta;
    EXPECT_LE(r.bound, prev + 1e-6) << theta;
    prev = r.bound;
  }
}

TEST(LpUpperBound, DegreeMonotone) {
  for (double theta : {0.4, 0.8, std::numbers::pi / 3, 1.3, 2.2}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 16; d <= 40; d += 4) {
      const auto r = bound_at(theta, d);
      ASSERT_EQ(r.status, LpBoundStatus::Certified) << theta << " " << d;
      EXPECT_LE(r.bound, prev + 1e-9) << theta << " " << d;
      prev = r.bound;
    }
  }
}

TEST(LpUpperBound, SandwichWithKnownCodes) {
  for (auto code : all_known_codes()) {
    const auto c = known_code(code);
    const auto r = bound_at(c.min_angle);
    ASSERT_EQ(r.status, LpBoundStatus::Certified);
    EXPECT_LE(static_cast<double>(c.size()), std::floor(r.bound + 1e-6)) << to_string(code);
  }
}

TEST(LpUpperBound, SmallAngleNeedsHigherDegree) {
  EXPECT_EQ(bound_at(0.1, 20).status, LpBoundStatus::Infeasible);
  EXPECT_TRUE(std::isinf(bound_at(0.1, 20).bound));
  LPConfig c;
  c.degree = 40;
  c.refine_rounds = 12;
  const auto r = lp_upper_bound(ThetaCodeAngle(0.18207), c);
  ASSERT_EQ(r.status, LpBoundStatus::Certified);
  // Dense LP oracle at degree 40 reports about 443.
  EXPECT_NEAR(r.bound, 443.0, 5.0);
}

TEST(LpUpperBound, FewRefineRoundsCanFail) {
  LPConfig c;
  c.refine_rounds = 0;
  c.repair_limit = 0.0;
  const auto r = lp_upper_bound(ThetaCodeAngle(0.28), c);
  EXPECT_EQ(r.status, LpBoundStatus::NotConverged);
  EXPECT_GT(r.certificate.max_violation, c.feasibility_tol);
}

TEST(LpUpperBound, DeterministicAcrossThreads) {
  const auto ref = bound_at(std::numbers::pi / 3);
  std::vector<LPBoundResult> out(4);
  {
    std::vector<std::jthread> pool;
    for (auto& slot : out) pool.emplace_back([&slot] { slot = bound_at(std::numbers::pi / 3); });
  }
  for (const auto& r : out) {
    EXPECT_EQ(r.bound, ref.bound);
    EXPECT_EQ(r.certificate.coeffs.coeffs, ref.certificate.coeffs.coeffs);
  }
}

TEST(VerifyCertificate, TrivialConstantIsInfeasible) {
  Certificate cert{SeriesCoefficients({1.0, 0.0, 0.0}), 1.0, 0.0};
  EXPECT_NEAR(verify_certificate(cert, 1000).max_violation, 1.0, 1e-15);
}

TEST(VerifyCertificate, AntipodalHandCertificate) {
  Certificate cert{SeriesCoefficients({1.0, 1.0}), std::numbers::pi, 0.0};
  const auto check = verify_certificate(cert, 1000);
  EXPECT_EQ(check.max_violation, 0.0);
  EXPECT_EQ(check.min_coeff, 1.0);
}

TEST(VerifyCertificate, TetrahedronHandCertificate) {
  Certificate cert{SeriesCoefficients({1.0, 2.0, 1.0}), std::acos(-1.0 / 3.0), 0.0};
  EXPECT_LE(verify_certificate(cert, 4096).max_violation, 1e-15);
  Certificate wrong{SeriesCoefficients({1.0, 2.0, 1.0}), 1.8, 0.0};
  EXPECT_GT(verify_certificate(wrong, 4096).max_violation, 0.0);
}

TEST(ChebyshevLobatto, IncludesEndpoints) {
  const auto p = chebyshev_lobatto(-1.0, 0.5, 17);
  ASSERT_EQ(p.size(), 17u);
  EXPECT_DOUBLE_EQ(p.front(), -1.0);
  EXPECT_DOUBLE_EQ(p.back(), 0.5);
  for (std::size_t m = 1; m < p.size(); ++m) EXPECT_GT(p[m], p[m - 1]);
}
