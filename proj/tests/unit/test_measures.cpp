#include <cmath>

#include <gtest/gtest.h>

#include "rhop/error.hpp"
#include "rhop/measures.hpp"

using namespace rhop;

namespace {

Weight weight(const char* text) { return Weight::from_spec(parse_weight_spec(text)); }

}  // namespace

TEST(WeightSpec, CanonicalTextRoundTrips) {
  for (const char* t : {"lebesgue", "onepluscos", "onepluscos:c=-0.8", "expcos:s=1", "gauss",
                        "quartic:g=1,d=0", "bump:c=0.5,a=1"}) {
    const WeightSpec s = parse_weight_spec(t);
    EXPECT_EQ(parse_weight_spec(s.text()).text(), s.text()) << t;
  }
  EXPECT_EQ(parse_weight_spec("gauss").contour, Contour::line);
  EXPECT_EQ(parse_weight_spec("expcos:s=2").contour, Contour::circle);
}

TEST(WeightSpec, RejectsMalformedText) {
  for (const char* t : {"", "nope", "expcos:s", "onepluscos:c=2", "bump:c=-1", "quartic:g=x"}) {
    EXPECT_THROW(parse_weight_spec(t), Error) << t;
  }
}

TEST(CircleMoments, LebesgueIsDelta) {
  const auto m = circle_moments<double>(weight("lebesgue"), 6);
  EXPECT_NEAR(m.mu[0].real(), 1.0, 1e-15);
  for (std::size_t k = 1; k <= 6; ++k) EXPECT_LT(std::abs(m.mu[k]), 1e-15);
}

TEST(CircleMoments, ExpCosAreBesselRatios) {
  // int e^{s cos t} e^{-ikt} dt / 2pi = I_k(s), up to the normalization
  const double s = 1.3;
  const auto m = circle_moments<double>(weight("expcos:s=1.3"), 8);
  for (std::size_t k = 0; k <= 8; ++k) {
    const double want = std::cyl_bessel_i(static_cast<double>(k), s) / std::cyl_bessel_i(0.0, s);
    EXPECT_NEAR(m.mu[k].real() / m.mu[0].real(), want, 1e-14) << k;
    EXPECT_LT(std::abs(m.mu[k].imag()), 1e-15);
  }
}

TEST(CircleMoments, OnePlusCosExactAndFloatingAgree) {
  const WeightSpec s = parse_weight_spec("onepluscos:c=0.5");
  const auto ex = exact_circle_moments(s, 4);
  ASSERT_TRUE(ex.has_value());
  EXPECT_EQ((*ex)[1], rational(1, 4));
  EXPECT_EQ((*ex)[2], rational(0));
  const auto m = circle_moments<double>(Weight::from_spec(s), 4);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_NEAR(m.mu[k].real(), static_cast<double>((*ex)[k]), 1e-15);
}

TEST(LineMoments, GaussEvenMomentsAreDoubleFactorials) {
  // m_{2j} / m_0 = (2j - 1)!! / 2^j
  const auto m = line_moments<double>(weight("gauss"), 10);
  double want = 1.0;
  for (std::size_t j = 0; j <= 5; ++j) {
    if (j > 0) want *= (2.0 * j - 1.0) / 2.0;
    EXPECT_NEAR(m.m[2 * j] / m.m[0], want, 1e-12 * want) << 2 * j;
    if (j < 5) EXPECT_NEAR(m.m[2 * j + 1], 0.0, 1e-13);
  }
  const auto ex = exact_line_moments(parse_weight_spec("gauss"), 6);
  ASSERT_TRUE(ex.has_value());
  EXPECT_EQ(ex->m[6] / ex->m[0], rational(15, 8));
}

TEST(LineMoments, ExtendedTierMatchesDouble) {
  const auto d = line_moments<double>(weight("quartic:g=1,d=0"), 8);
  const auto e = line_moments<extended>(weight("quartic:g=1,d=0"), 8);
  for (std::size_t j = 0; j <= 8; ++j) EXPECT_NEAR(d.m[j], to_double(e.m[j]), 1e-13 * (1.0 + std::abs(d.m[j])));
}

TEST(Weight, BumpIsAPerturbationOfOne) {
  const Weight b = weight("bump:c=0.5,a=2");
  EXPECT_DOUBLE_EQ(b(0.0), 1.5);
  EXPECT_NEAR(b(1.0), 1.0 + 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(b(30.0), 1.0, 1e-15);
}
