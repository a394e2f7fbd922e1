#pragma once

#include <cstddef>
#include <vector>

#include "rhop/measures.hpp"
#include "rhop/precision.hpp"

namespace rhop {

/// Sampled one-point function R together with the Christoffel-Darboux sum
/// it must reproduce.  Circle samples are on theta_j = 2 pi j / grid; line
/// samples are uniform on [-L, L].
struct OnePointFunction {
  Contour contour = Contour::circle;
  std::size_t n = 0;
  std::vector<double> points;
  std::vector<double> values;     ///< R
  std::vector<double> cd_sum;     ///< sum_{j<=n} |p_j|^2 w
  double cd_residual = 0.0;       ///< max |R - CD| / max CD
  double imag_residual = 0.0;     ///< circle: max |Im R| / max CD
  double normalization = 0.0;     ///< int R (d theta / 2 pi on the circle, dx on the line)
  double normalization_error = 0.0;
};

/// Circle: R = kappa_n^2 z^{-n} (Phi_{n+1}' Phi_n^* - Phi_{n+1} Phi_n^*') w,
/// i.e. the Wronskian of the first column of Y^{(n+1)}.
/// Line: R = k_n^2 (P_{n+1}' P_n - P_{n+1} P_n') w from the first column of X^{(n+1)}.
OnePointFunction one_point_fn(const Weight& w, std::size_t n, std::size_t grid = 256);

struct RelDetJob {
  Contour contour = Contour::circle;
  Weight omega1;
  Weight omega2;
  std::size_t n = 0;
  std::size_t t_nodes = 24;
  std::size_t grid = 512;  ///< circle: trapezoid points per t-node
};

/// Formula value against a brute-force determinant.
struct DetReport {
  std::size_t n = 0;
  double lhs = 0.0;  ///< t-integral of the one-point functions
  double rhs = 0.0;  ///< log of the brute-force determinant ratio
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::size_t nodes = 0;
};

/// log(D_n(w1 w2) / D_n(w2)) (line) or log(Delta_n(w1 w2) / Delta_n(w2))
/// (circle) as int_0^1 dt int R_t (w1 - 1) / w_t, w_t = 1 - t + t w1.
double relative_logdet(const RelDetJob& job);
/// The same value checked against extended-precision determinants.
DetReport relative_logdet_report(const RelDetJob& job);

/// Limit term of ln Delta_n(e^{-V}) for V with coefficients Vhat[k], k >= 0
/// (V real, so Vhat_{-k} = conj(Vhat_k)): -(n+1) Vhat_0 + sum_{k>=1} k |Vhat_k|^2.
double szego_limit_prediction(const std::vector<cplx>& Vhat, std::size_t n);

struct SzegoRow {
  std::size_t n = 0;
  double measured = 0.0;
  double abs_err = 0.0;
};

struct SzegoTable {
  double s = 0.0;
  double prediction = 0.0;  ///< at the largest n
  std::vector<SzegoRow> rows;
  /// Errors strictly decreasing from n_monotone_from onward.
  bool monotone = false;
  std::size_t n_monotone_from = 5;
};

/// ln Delta_n(e^{s cos theta}) for n in [n_min, n_max] against the limit
/// s^2 / 4.  Determinants are taken in the 150-digit tier, since the error
/// falls below double resolution well before n = 30.
SzegoTable szego_table(double s, std::size_t n_min, std::size_t n_max);

struct HankelLimitRow {
  std::size_t n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
};

struct HankelLimitTable {
  double log_integral = 0.0;  ///< int log w1 dx
  double fhat_term = 0.0;     ///< (1/4 pi) int |k| |fhat(k)|^2 dk
  std::vector<HankelLimitRow> rows;
  bool decreasing = false;    ///< |diff| strictly decreasing
};

/// ln(D_n(w1 e^{-x^2}) / D_n(e^{-x^2})) against
/// sqrt(2(n+1))/pi int log w1 + (1/4 pi) int |k| |fhat|^2 for n in [n_min, n_max].
/// w1 must tend to 1 at infinity.
HankelLimitTable hankel_strong_limit_check(const Weight& omega1, std::size_t n_min, std::size_t n_max);

struct DecayEntry {
  std::size_t j = 0, k = 0;
  double err = 0.0;
};

struct DecayReport {
  std::size_t n = 0;
  std::size_t reference_size = 0;
  std::vector<DecayEntry> entries;  ///< row-major over 0 <= j, k <= n
  std::size_t max_j = 0, max_k = 0;
  double max_err = 0.0;
  /// Least-squares fit of log(max error at distance d) = c - rate d,
  /// d = n + 1 - max(j, k), over distances above the roundoff floor.
  double rate = 0.0;
  double intercept = 0.0;
  std::size_t fit_points = 0;
  double symmetry_residual = 0.0;  ///< max |err_jk - err_kj|
};

/// |(T_n^{-1})_{jk} - (T^{-1})_{jk}| for a circle weight, the infinite
/// inverse approximated by a section of size max(4n + 4, reference_size).
DecayReport toeplitz_inverse_decay(const Weight& w, std::size_t n, std::size_t reference_size = 0);

}  // namespace rhop
