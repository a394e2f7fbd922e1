#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rhop/fourier.hpp"
#include "rhop/measures.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"

namespace rhop {

using Mat2 = Eigen::Matrix2cd;

// ---------------------------------------------------------------------------
// Cauchy operators, (1/2 pi i) int h(s) / (s - z) ds

/// Circle: exact on Fourier data; |z| = 1 requires cauchy_boundary.
cplx cauchy_circle(const FourierSeries& h, cplx z);

/// Boundary values on the circle: side = +1 keeps modes k >= 0 (inside
/// limit), side = -1 gives -h_k for k < 0 (outside limit).
FourierSeries cauchy_boundary(const FourierSeries& h, int side);

/// A line density given by its values; `halfwidth` bounds the region
/// outside of which h is negligible.
struct LineDensity {
  std::function<cplx(double)> h;
  double halfwidth = 10.0;
};

/// Off-contour Cauchy transform on the real line by graded Gauss-Legendre.
/// Throws use_boundary_mode when |Im z| < 1e-9 (1 + |Re z|).
cplx cauchy_line(const LineDensity& h, cplx z);

/// Plemelj boundary value C_{+/-} h(x) = +/- h(x)/2 + (1/2 pi i) PV int,
/// the principal value by singularity subtraction.
cplx cauchy_line_boundary(const LineDensity& h, double x, int side);

// ---------------------------------------------------------------------------
// Solutions

/// A 2x2 matrix function off a contour together with its boundary values
/// and jump.  Contour parameter is x on the line and theta on the circle.
struct RHSolution {
  Contour contour = Contour::line;
  std::size_t n = 0;
  std::function<Mat2(cplx)> eval;
  std::function<Mat2(double, int)> boundary;
  std::function<Mat2(double)> jump;

  /// Line: residue matrix X_1.  Circle: Y(0).
  Mat2 residue_or_value = Mat2::Zero();
  cplx alpha = 0.0;      ///< circle: alpha_{n-1} = -conj(Y_11(0))
  double kappa2 = 0.0;   ///< circle: kappa_{n-1}^2 = -Y_21(0); line: k_{n-1}^2 from X_1
  double jump_residual = -1.0;
  double det_residual = -1.0;
  /// Largest (scaled) expansion coefficient that must vanish for
  /// m(z) z^{-n sigma_3} -> I; zero by construction for the solver.
  double normalization_residual = -1.0;
  double condition = 0.0;  ///< solver only: condition estimate of the linear system
};

/// Contour points used for the jump check.
std::vector<double> default_contour_points(Contour c, std::size_t count, double halfwidth = 4.0);
/// Off-contour points used for det / agreement checks: a ring pair for the
/// circle (|z| = 0.5 and 2), a two-sided set for the line.
std::vector<cplx> default_test_points(Contour c, std::size_t count);

/// max ||m_+ - m_- v|| over the points; fills jump_residual.
double verify_jump(RHSolution& sol, const std::vector<double>& points);
/// max |det m - 1| over the points; fills det_residual.
double verify_det(RHSolution& sol, const std::vector<cplx>& points);

/// X^{(n)} from the monic OPs of w and their Cauchy transforms.  Boundary
/// values are vertical limits x +/- i eps, Richardson-extrapolated.
RHSolution assemble_X(const Weight& w, std::size_t n);
/// Boundary values via Plemelj instead of extrapolation (cross-check).
Mat2 assemble_X_boundary_plemelj(const Weight& w, std::size_t n, double x, int side);

/// Y^{(n)} from Phi_n, Phi_{n-1}^*, kappa_{n-1} and Fourier-exact Cauchy
/// transforms; boundary values by Fourier projection.
RHSolution assemble_Y(const Weight& w, std::size_t n, std::size_t modes = 256);

/// Singular-integral-equation solution of the circle problem with Fourier
/// modes -M..0 for mu.  See the implementation notes for the normalization.
RHSolution solve_rhp_circle(const Weight& w, std::size_t n, std::size_t M = 64);

/// Residual of X^{(n+1)} - (z E11 + X1^{(n+1)} E11 - E11 X1^{(n)}) X^{(n)}.
double transfer_identity_line(const Weight& w, std::size_t n, const std::vector<cplx>& points);

struct TransferCircleReport {
  double residual = 0.0;
  double det_residual = 0.0;
  cplx a_hat, b_hat, c_hat;
};

/// Y^{(n+1)} diag(1, z) - [[z + a, b], [c, 1]] Y^{(n)} with
/// a = conj(alpha_n) alpha_{n-1}, b = conj(alpha_n) / kappa_n^2,
/// c = kappa_n^2 alpha_{n-1}; n >= 1.
TransferCircleReport transfer_identity_circle(const Weight& w, std::size_t n,
                                              const std::vector<cplx>& points);

/// Recurrence coefficients read off X_1: a_n = (X1^(n))_11 - (X1^(n+1))_11 and
/// b_{n-1}^2 = (X1^(n))_12 (X1^(n))_21.
struct LineExtraction {
  double a = 0.0;
  double b2 = 0.0;
  double k2 = 0.0;            ///< k_{n-1}^2 = -(X1^(n))_21 / (2 pi i)
  double b2_mixed = 0.0;    ///< (X1^(n))_12 (X1^(n+1))_21, mixing two degrees (not b^2)
};
LineExtraction extract_line_coefficients(const Weight& w, std::size_t n);

double max_entry_diff(const Mat2& a, const Mat2& b);

}  // namespace rhop
