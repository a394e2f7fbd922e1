#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "rhop/measures.hpp"
#include "rhop/opline.hpp"
#include "rhop/toda.hpp"

using namespace rhop;

namespace {

std::vector<double> eigenvalues(const JacobiMatrix& L) {
  const std::size_t N = L.size();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i = 0; i < N; ++i) M(i, i) = L.diag[i];
  for (std::size_t i = 0; i + 1 < N; ++i) M(i, i + 1) = M(i + 1, i) = L.offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return {es.eigenvalues().data(), es.eigenvalues().data() + N};
}

}  // namespace

TEST(Toda, TwoByTwoClosedForm) {
  // a = 0, b = 1 at t = 0 flows to a_0 = tanh 2t, b_0 = sech 2t
  const JacobiMatrix L0{{0.0, 0.0}, {1.0}};
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    for (const JacobiMatrix& L : {toda_flow_spectral(L0, t), toda_flow_ode(L0, t)}) {
      EXPECT_NEAR(L.diag[0], std::tanh(2 * t), 1e-9) << t;
      EXPECT_NEAR(L.diag[1], -std::tanh(2 * t), 1e-9);
      EXPECT_NEAR(L.offdiag[0], 1.0 / std::cosh(2 * t), 1e-9);
    }
  }
}

TEST(Toda, SpectralAndOdeAgreeAndPreserveSpectrum) {
  const JacobiMatrix L0 = jacobi_from_recurrence(recurrence_from_measure(parse_weight_spec("gauss"), 6), 6);
  const JacobiMatrix a = toda_flow_spectral(L0, 1.0);
  const JacobiMatrix b = toda_flow_ode(L0, 1.0);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(a.diag[i], b.diag[i], 1e-7);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(a.offdiag[i], b.offdiag[i], 1e-7);
  const auto e0 = eigenvalues(L0), e1 = eigenvalues(a);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(e0[i], e1[i], 1e-11);
  EXPECT_LT(toda_commutation_residual(L0, 4, 0.5), 1e-5);
}
