#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rhop/dets.hpp"
#include "rhop/measures.hpp"

using namespace rhop;

namespace {

Weight weight(const char* text) { return Weight::from_spec(parse_weight_spec(text)); }

// ln det(I_{j-k}(s)) in long double.
double bessel_logdet(double s, std::size_t n) {
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> T(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t k = 0; k <= n; ++k)
      T(j, k) = std::cyl_bessel_i(static_cast<long double>(j > k ? j - k : k - j), static_cast<long double>(s));
  return static_cast<double>(std::log(T.partialPivLu().determinant()));
}

}  // namespace

TEST(OnePoint, LebesgueIsFlat) {
  // sum_{j<=2} |z^j|^2 = 3
  const OnePointFunction f = one_point_fn(weight("lebesgue"), 2, 16);
  for (double r : f.values) EXPECT_NEAR(r, 3.0, 1e-13);
  EXPECT_NEAR(f.normalization, 3.0, 1e-13);
}

TEST(OnePoint, GaussMassIsNPlusOne) {
  const OnePointFunction f = one_point_fn(weight("gauss"), 1);
  EXPECT_NEAR(f.normalization, 2.0, 1e-10);
  EXPECT_LT(f.cd_residual, 1e-12);
  for (std::size_t n : {4, 10}) {
    const OnePointFunction g = one_point_fn(weight("quartic:g=1,d=0"), n);
    EXPECT_LT(g.cd_residual, 1e-9);
    EXPECT_NEAR(g.normalization, n + 1.0, 1e-9);
  }
}

TEST(OnePoint, CircleAgreesWithChristoffelDarboux) {
  for (std::size_t n : {0, 3, 10}) {
    const OnePointFunction f = one_point_fn(weight("expcos:s=1"), n);
    EXPECT_LT(f.cd_residual, 1e-12) << n;
    EXPECT_LT(f.imag_residual, 1e-12) << n;
    EXPECT_NEAR(f.normalization, n + 1.0, 1e-10) << n;
  }
}

TEST(RelativeDet, CircleAgainstBesselDeterminant) {
  RelDetJob job;
  job.contour = Contour::circle;
  job.omega1 = weight("expcos:s=1");
  job.omega2 = weight("lebesgue");
  job.n = 10;
  EXPECT_NEAR(relative_logdet(job), bessel_logdet(1.0, 10), 1e-9);
}

TEST(RelativeDet, LineReportAgrees) {
  RelDetJob job;
  job.contour = Contour::line;
  job.omega1 = weight("bump:c=0.5,a=1");
  job.omega2 = weight("gauss");
  job.n = 4;
  const DetReport r = relative_logdet_report(job);
  EXPECT_LT(r.abs_err, 1e-9);
  EXPECT_GT(r.lhs, 0.0);
}

TEST(Szego, ConstantPotentialIsExact) {
  // Delta_n(e^{-c}) = e^{-(n+1)c}
  const double c = 0.7;
  for (std::size_t n : {0, 5, 20}) EXPECT_NEAR(szego_limit_prediction({cplx{c, 0.0}}, n), -(n + 1.0) * c, 1e-14);
  // V = -s cos theta: Vhat_1 = -s/2
  EXPECT_NEAR(szego_limit_prediction({0.0, cplx{-0.5, 0.0}}, 30), 0.25, 1e-15);
}

TEST(Szego, TableConvergesMonotonically) {
  const SzegoTable t = szego_table(1.0, 1, 20);
  EXPECT_NEAR(t.prediction, 0.25, 1e-15);
  EXPECT_TRUE(t.monotone);
  for (const auto& row : t.rows) {
    if (row.n <= 12) EXPECT_NEAR(row.measured, bessel_logdet(1.0, row.n), 1e-12) << row.n;
  }
  EXPECT_LT(t.rows.back().abs_err, 1e-20);
}

TEST(HankelLimit, DifferenceShrinks) {
  const HankelLimitTable t = hankel_strong_limit_check(weight("bump:c=0.5,a=1"), 4, 10);
  EXPECT_TRUE(t.decreasing);
  ASSERT_EQ(t.rows.size(), 7u);
  EXPECT_LT(std::abs(t.rows.back().diff), std::abs(t.rows.front().diff));
  // int log(1 + e^{-x^2}/2) dx by the series sum (-1)^{m+1} 2^{-m} sqrt(pi/m) / m
  double want = 0.0;
  for (int m = 1; m < 60; ++m) want += (m % 2 ? 1.0 : -1.0) * std::pow(0.5, m) * std::sqrt(M_PI / m) / m;
  EXPECT_NEAR(t.log_integral, want, 1e-12);
}

TEST(ToeplitzInverse, ErrorConcentratesAtTheCorner) {
  const DecayReport d = toeplitz_inverse_decay(weight("onepluscos:c=-0.8"), 16);
  EXPECT_GE(std::min(d.max_j, d.max_k), 14u);
  EXPECT_GT(d.rate, 0.0);
  EXPECT_LT(d.symmetry_residual, 1e-12);
  EXPECT_EQ(d.entries.size(), 17u * 17u);
}
