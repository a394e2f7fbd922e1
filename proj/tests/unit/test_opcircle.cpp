#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rhop/measures.hpp"
#include "rhop/opcircle.hpp"

using namespace rhop;

namespace {

// Monic Phi_n from the Toeplitz normal equations with Bessel moments of
// e^{s cos theta}; alpha_{n-1} = -conj(Phi_n(0)).
std::vector<double> brute_alpha(double s, std::size_t N) {
  auto mu = [s](long k) { return std::cyl_bessel_i(static_cast<double>(std::abs(k)), s); };
  std::vector<double> alpha;
  for (std::size_t n = 1; n <= N; ++n) {
    Eigen::MatrixXd T(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) T(k, j) = mu(static_cast<long>(k) - static_cast<long>(j));
      rhs(k) = -mu(static_cast<long>(k) - static_cast<long>(n));
    }
    alpha.push_back(-T.partialPivLu().solve(rhs)(0));
  }
  return alpha;
}

}  // namespace

TEST(Verblunsky, OnePlusCosClosedForm) {
  const VerblunskySeq v = verblunsky_from_spec(parse_weight_spec("onepluscos"), 10);
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_NEAR(v.alpha[n].real(), (n % 2 ? -1.0 : 1.0) / (n + 2.0), 1e-13) << n;
    EXPECT_NEAR(v.alpha[n].imag(), 0.0, 1e-14);
  }
}

TEST(Verblunsky, ExpCosMatchesNormalEquations) {
  const auto want = brute_alpha(1.0, 10);
  const Weight w = Weight::from_spec(parse_weight_spec("expcos:s=1"));
  const VerblunskySeq lev = verblunsky_from_weight(w, 10);
  const VerblunskySeq sch = to_double(schur_geronimus(circle_moments<double>(w, 40), 10));
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_NEAR(lev.alpha[n].real(), want[n], 1e-12) << n;
    EXPECT_NEAR(sch.alpha[n].real(), want[n], 1e-12) << n;
  }
}

TEST(Verblunsky, ExactTierIsRational) {
  const auto mu = exact_circle_moments(parse_weight_spec("onepluscos"), 6);
  const ExactVerblunsky v = verblunsky_levinson_exact(*mu, 5);
  EXPECT_EQ(v.alpha[0], rational(1, 2));
  EXPECT_EQ(v.alpha[1], rational(-1, 3));
  EXPECT_EQ(v.alpha[4], rational(1, 6));
}

TEST(ToeplitzDet, MatchesDirectDeterminantAndNormRatio) {
  const Weight w = Weight::from_spec(parse_weight_spec("expcos:s=1"));
  const auto m = circle_moments<double>(w, 12);
  const VerblunskySeq v = verblunsky_from_weight(w, 12);
  for (std::size_t n = 0; n <= 10; ++n) {
    Eigen::MatrixXd T(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) T(j, k) = m.at(static_cast<long>(j) - static_cast<long>(k)).real();
    EXPECT_NEAR(toeplitz_logdet(m, n), std::log(T.determinant()), 1e-12) << n;
    if (n > 0) {
      const double ratio = toeplitz_det(m, n - 1) / toeplitz_det(m, n);
      EXPECT_NEAR(ratio, v.kappa[n] * v.kappa[n], 1e-11 * ratio);
    }
  }
  const auto ex = exact_circle_moments(parse_weight_spec("onepluscos"), 4);
  EXPECT_EQ(toeplitz_det_exact(*ex, 4), rational(3, 16));
}

TEST(CMV, SectionReproducesMoments) {
  const Weight w = Weight::from_spec(parse_weight_spec("onepluscos:c=0.6"));
  const CMVMatrix C = cmv_build(verblunsky_from_weight(w, 12), 10);
  const auto m = circle_moments<double>(w, 10);
  const std::size_t K = cmv_moment_window(10);
  ASSERT_GE(K, 3u);
  for (std::size_t k = 0; k <= K; ++k) EXPECT_LT(std::abs(cmv_moment(C, k) - std::conj(m.mu[k]) / m.mu[0].real()), 1e-13);
}

TEST(Schur, IteratesAgreeAcrossRoutes) {
  const Weight w = Weight::from_spec(parse_weight_spec("expcos:s=0.5"));
  const auto m = circle_moments<double>(w, 64);
  const VerblunskySeq v = verblunsky_from_weight(w, 8);
  const cplx z{0.3, -0.2};
  const cplx f0 = schur_function(m, z);
  for (std::size_t n = 0; n <= 4; ++n) {
    const cplx a = schur_iterate_series(m, n, z);
    EXPECT_LT(std::abs(a - schur_iterate_pointwise(f0, v, n, z)), 1e-10) << n;
    EXPECT_LT(std::abs(a - schur_iterate_integral(w, v, n, z)), 1e-10) << n;
  }
}

TEST(Wall, PinterNevaiOnRandomSequences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(0.0, 0.5), th(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> alpha(12);
    for (auto& a : alpha) a = std::polar(r(rng), th(rng));
    const WallReport rep = wall_pinter_nevai(verblunsky_from_alpha(alpha), 12);
    EXPECT_LT(rep.residual, 1e-12);
    EXPECT_LT(rep.residual_star, 1e-12);
    EXPECT_NEAR(std::abs(rep.pair.B[0] - 1.0), 0.0, 1e-15);
  }
}
