#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "rhop/measures.hpp"
#include "rhop/opline.hpp"

using namespace rhop;

TEST(Recurrence, GaussIsHermite) {
  for (Precision p : {Precision::standard, Precision::extended, Precision::exact}) {
    const RecurrenceLine r = recurrence_from_measure(parse_weight_spec("gauss"), 12, p);
    ASSERT_GE(r.size(), 12u);
    const double tol = p == Precision::standard ? 1e-10 : 1e-13;
    for (std::size_t n = 0; n <= 10; ++n) {
      EXPECT_NEAR(r.a[n], 0.0, tol);
      EXPECT_NEAR(r.b[n], std::sqrt((n + 1) / 2.0), tol) << n;
    }
  }
}

TEST(Recurrence, QuarticMatchesMomentGramSchmidt) {
  // Oracle: Stieltjes on the moment inner product in long double.
  const Weight w = Weight::from_spec(parse_weight_spec("quartic:g=1,d=0"));
  const auto m = line_moments<double>(w, 16);
  const std::size_t N = 6;
  std::vector<std::vector<long double>> P{{1.0L}};
  auto ip = [&](const std::vector<long double>& p, const std::vector<long double>& q, int shift) {
    long double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * m.m[i + j + shift];
    return s;
  };
  std::vector<long double> a, h;
  for (std::size_t n = 0; n < N; ++n) {
    h.push_back(ip(P[n], P[n], 0));
    a.push_back(ip(P[n], P[n], 1) / h[n]);
    std::vector<long double> next(n + 2, 0.0L);
    for (std::size_t i = 0; i <= n; ++i) {
      next[i + 1] += P[n][i];
      next[i] -= a[n] * P[n][i];
    }
    if (n > 0)
      for (std::size_t i = 0; i < P[n - 1].size(); ++i) next[i] -= h[n] / h[n - 1] * P[n - 1][i];
    P.push_back(next);
  }
  const RecurrenceLine r = recurrence_from_measure(w, N + 1);
  for (std::size_t n = 0; n + 1 < N; ++n) {
    EXPECT_NEAR(r.a[n], static_cast<double>(a[n]), 1e-10);
    EXPECT_NEAR(r.b[n], static_cast<double>(std::sqrt(h[n + 1] / h[n])), 1e-10) << n;
  }
}

TEST(HankelDet, MatchesDirectDeterminant) {
  const Weight w = Weight::from_spec(parse_weight_spec("gauss"));
  const auto m = line_moments<double>(w, 12);
  for (std::size_t n = 0; n <= 6; ++n) {
    Eigen::MatrixXd H(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) H(i, j) = m.m[i + j];
    const double direct = H.determinant();
    EXPECT_NEAR(to_double(hankel_det(w, n).value), direct, 1e-11 * std::abs(direct)) << n;
  }
  // prod_{j<=n} j! / 2^j for the probability Gaussian
  const auto ex = exact_line_moments(parse_weight_spec("gauss"), 8);
  EXPECT_EQ(hankel_det<rational>(ex->m, 4), rational(9, 32));
}

TEST(Jacobi, SpectralMeasureIsGaussHermite) {
  const RecurrenceLine r = recurrence_from_measure(parse_weight_spec("gauss"), 3);
  const DiscreteMeasure mu = spectral_measure(jacobi_from_recurrence(r, 3));
  ASSERT_EQ(mu.atoms.size(), 3u);
  EXPECT_NEAR(mu.atoms[0], -std::sqrt(1.5), 1e-13);
  EXPECT_NEAR(mu.atoms[1], 0.0, 1e-13);
  EXPECT_NEAR(mu.atoms[2], std::sqrt(1.5), 1e-13);
  EXPECT_NEAR(mu.weights[0], 1.0 / 6.0, 1e-13);
  EXPECT_NEAR(mu.weights[1], 2.0 / 3.0, 1e-13);
}

TEST(Jacobi, MeasureRoundTrip) {
  const JacobiMatrix L{{0.3, -0.1, 0.7, 0.2, -0.4}, {0.9, 1.1, 0.6, 0.8}};
  const JacobiMatrix back = jacobi_from_measure(spectral_measure(L));
  for (std::size_t i = 0; i < L.size(); ++i) EXPECT_NEAR(back.diag[i], L.diag[i], 1e-12);
  for (std::size_t i = 0; i + 1 < L.size(); ++i) EXPECT_NEAR(back.offdiag[i], L.offdiag[i], 1e-12);
}

TEST(Jacobi, RejectsNonPositiveOffDiagonal) {
  EXPECT_THROW(validate(JacobiMatrix{{0.0, 0.0}, {-1.0}}), Error);
}
