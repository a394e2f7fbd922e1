#include <cmath>

#include <gtest/gtest.h>

#include "rhop/measures.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/rhp.hpp"

using namespace rhop;

namespace {

Weight weight(const char* text) { return Weight::from_spec(parse_weight_spec(text)); }

}  // namespace

TEST(CircleRHP, LebesgueHasTrivialData) {
  RHSolution y = assemble_Y(weight("lebesgue"), 3);
  EXPECT_NEAR(std::abs(y.alpha), 0.0, 1e-14);
  EXPECT_NEAR(y.kappa2, 1.0, 1e-14);
  // Phi_3 = z^3
  const cplx z{0.4, 0.1};
  EXPECT_LT(std::abs(y.eval(z)(0, 0) - z * z * z), 1e-14);
}

TEST(CircleRHP, AssemblyAndSolverSatisfyTheProblem) {
  const Weight w = weight("expcos:s=1");
  const auto pts = default_contour_points(Contour::circle, 64);
  const auto tp = default_test_points(Contour::circle, 16);
  for (std::size_t n : {0, 1, 4, 10}) {
    RHSolution a = assemble_Y(w, n);
    RHSolution s = solve_rhp_circle(w, n, 64);
    EXPECT_LT(verify_jump(a, pts), 1e-10) << n;
    EXPECT_LT(verify_det(a, tp), 1e-10) << n;
    EXPECT_LT(verify_jump(s, pts), 1e-10) << n;
    EXPECT_LT(a.normalization_residual, 1e-10) << n;
    for (const cplx& z : tp) EXPECT_LT(max_entry_diff(a.eval(z), s.eval(z)), 1e-10) << n;
    if (n > 0) {
      // alpha_{n-1} and kappa_{n-1} read off Y(0)
      const VerblunskySeq v = verblunsky_from_weight(w, n);
      EXPECT_LT(std::abs(s.alpha - v.alpha[n - 1]), 1e-12);
      EXPECT_NEAR(s.kappa2, v.kappa[n - 1] * v.kappa[n - 1], 1e-11);
    }
  }
}

TEST(CircleRHP, TransferIdentity) {
  const auto tp = default_test_points(Contour::circle, 16);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = transfer_identity_circle(weight("onepluscos:c=0.7"), n, tp);
    EXPECT_LT(r.residual, 1e-11) << n;
  }
}

TEST(CircleRHP, PointsOnTheContourAreRejected) {
  RHSolution y = assemble_Y(weight("onepluscos"), 2);
  EXPECT_THROW(y.eval(cplx{0.0, 1.0}), Error);
  EXPECT_THROW(solve_rhp_circle(weight("onepluscos"), 8, 8), Error);
}

TEST(LineRHP, GaussAssemblyAndExtraction) {
  const Weight w = weight("gauss");
  const auto pts = default_contour_points(Contour::line, 64);
  const auto tp = default_test_points(Contour::line, 16);
  for (std::size_t n = 1; n <= 8; ++n) {
    RHSolution x = assemble_X(w, n);
    EXPECT_LT(verify_jump(x, pts), 1e-9) << n;
    EXPECT_LT(verify_det(x, tp), 1e-10) << n;
    EXPECT_LT(transfer_identity_line(w, n, tp), 1e-10) << n;
    const LineExtraction e = extract_line_coefficients(w, n);
    EXPECT_NEAR(e.a, 0.0, 1e-10);
    EXPECT_NEAR(e.b2, n / 2.0, 1e-10) << n;
  }
}

TEST(LineRHP, PlemeljAndExtrapolatedBoundaryValuesAgree) {
  const Weight w = weight("quartic:g=1,d=0");
  RHSolution x = assemble_X(w, 3);
  for (double t : {-1.2, 0.0, 0.45}) {
    for (int side : {+1, -1}) EXPECT_LT(max_entry_diff(x.boundary(t, side), assemble_X_boundary_plemelj(w, 3, t, side)), 1e-9);
  }
}
