#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rhop/error.hpp"
#include "rhop/measures.hpp"
#include "rhop/precision.hpp"

namespace rhop {

/// Verblunsky coefficients alpha_0..alpha_{N-1}, rho_j = sqrt(1 - |alpha_j|^2)
/// and norming constants kappa_0..kappa_N of phi_n = kappa_n Phi_n.
template <class Real>
struct BasicVerblunsky {
  std::vector<complex_t<Real>> alpha;
  std::vector<Real> rho;
  std::vector<Real> kappa;
  std::optional<Breakdown> breakdown;

  std::size_t size() const { return alpha.size(); }
};
using VerblunskySeq = BasicVerblunsky<double>;

/// Builds a sequence from alpha alone, with kappa_0 = 1/sqrt(mu0).
VerblunskySeq verblunsky_from_alpha(std::vector<cplx> alpha, double mu0 = 1.0);

template <class Real>
VerblunskySeq to_double(const BasicVerblunsky<Real>& v);

/// Exact data for real symmetric rational moments.
struct ExactVerblunsky {
  std::vector<rational> alpha;
  std::vector<rational> kappa2;  ///< kappa_0^2..kappa_N^2
  std::optional<Breakdown> breakdown;
};

/// Gram-Schmidt of 1, z, ..., z^N against the Toeplitz form
/// <p, q> = sum conj(p_j) q_k mu_{j-k}; alpha_{n-1} = -conj(Phi_n(0)).
template <class Real>
BasicVerblunsky<Real> verblunsky_levinson(const CircleMoments<Real>& moments, std::size_t N);
ExactVerblunsky verblunsky_levinson_exact(const std::vector<rational>& mu, std::size_t N);

/// Verblunsky data of a circle weight in the requested tier.
VerblunskySeq verblunsky_from_weight(const Weight& w, std::size_t N,
                                     Precision precision = Precision::standard);
VerblunskySeq verblunsky_from_spec(const WeightSpec& spec, std::size_t N,
                                   Precision precision = Precision::standard);

/// Toeplitz determinant Delta_n = det(mu_{j-k})_{j,k=0..n}.
template <class Real>
Real toeplitz_det(const CircleMoments<Real>& moments, std::size_t n);
/// log Delta_n, via the LDL pivots (no overflow for large n).
template <class Real>
Real toeplitz_logdet(const CircleMoments<Real>& moments, std::size_t n);
rational toeplitz_det_exact(const std::vector<rational>& mu, std::size_t n);

/// Orthonormal (phi_n(z), phi_n^*(z)) by the Szego recurrence.
template <class Z>
std::pair<Z, Z> szego_eval(const VerblunskySeq& v, std::size_t n, const Z& z) {
  if (n > v.size()) throw Error(ErrorCode::invalid_argument, "opcircle", "degree beyond stored data");
  Z phi(v.kappa[0]), star(v.kappa[0]);
  for (std::size_t k = 0; k < n; ++k) {
    const Z next = (z * phi - std::conj(v.alpha[k]) * star) / v.rho[k];
    star = (star - v.alpha[k] * z * phi) / v.rho[k];
    phi = next;
  }
  return {phi, star};
}

/// Monic (Phi_n(z), Phi_n^*(z)).
template <class Z>
std::pair<Z, Z> szego_eval_monic(const VerblunskySeq& v, std::size_t n, const Z& z) {
  auto [p, s] = szego_eval(v, n, z);
  return {p / v.kappa[n], s / v.kappa[n]};
}

/// Ascending coefficients of the monic Phi_n and Phi_n^*.
std::pair<std::vector<cplx>, std::vector<cplx>> szego_monic_coefficients(const VerblunskySeq& v,
                                                                         std::size_t n);

/// N x N section of C = LM.
struct CMVMatrix {
  Eigen::MatrixXcd C;

  std::size_t size() const { return static_cast<std::size_t>(C.rows()); }
  /// Diagonals -2..2, each of length N - |offset|.
  std::vector<std::vector<cplx>> bands() const;
};

CMVMatrix cmv_build(const VerblunskySeq& v, std::size_t N);
/// Largest k for which <e_0, C^k e_0> of the section equals that of the
/// full operator.
std::size_t cmv_moment_window(std::size_t N);
/// <e_0, C^k e_0>, which equals conj(mu_k) for the probability measure.
cplx cmv_moment(const CMVMatrix& C, std::size_t k);

// ---------------------------------------------------------------------------
// Schur algorithm

/// Taylor coefficients f_0..f_{L-1} of the Schur function f = S1 / S0,
/// S1 = sum mu_{k+1} z^k, S0 = 1 + sum_{k>=1} mu_k z^k (moments divided by
/// mu_0).  L <= moments order.
template <class Real>
std::vector<complex_t<Real>> schur_series(const CircleMoments<Real>& moments, std::size_t L);

/// One Schur step z f_{n+1} = (f_n - f_n(0)) / (1 - conj(f_n(0)) f_n) on a
/// truncated series (the result is one term shorter).
template <class Real>
std::vector<complex_t<Real>> schur_step(const std::vector<complex_t<Real>>& f);

/// alpha_n = f_n(0) for n < N, iterating on series with 8 guard terms when
/// the moments allow.
template <class Real>
BasicVerblunsky<Real> schur_geronimus(const CircleMoments<Real>& moments, std::size_t N);

/// f_n(z) from the truncated series of the n-th iterate.
cplx schur_iterate_series(const CircleMoments<double>& moments, std::size_t n, cplx z);

/// f_n(z) as the ratio of the two contour integrals with Phi_n and Phi_n^*
/// against w d theta / 2 pi; |z| <= 0.95.
cplx schur_iterate_integral(const Weight& w, const VerblunskySeq& v, std::size_t n, cplx z);

/// f_n(z) from f_0(z) by n pointwise Moebius steps (z != 0).
cplx schur_iterate_pointwise(cplx f0, const VerblunskySeq& v, std::size_t n, cplx z);

// ---------------------------------------------------------------------------
// Wall polynomials

/// A_{n-1}, B_{n-1} from the product of [[z, alpha_k], [conj(alpha_k) z, 1]],
/// k = 0..n-1, which equals [[z B^*, A], [z A^*, B]]; B(0) = 1.
struct WallPair {
  std::size_t n = 0;
  std::vector<cplx> A;
  std::vector<cplx> B;
};

struct WallReport {
  WallPair pair;
  double residual_star = 0.0;  ///< Phi_n^* - (B - z A)
  double residual = 0.0;       ///< Phi_n - (z B^* - A^*)
};

WallPair wall_polynomials(const VerblunskySeq& v, std::size_t n);
WallReport wall_pinter_nevai(const VerblunskySeq& v, std::size_t n);

extern template BasicVerblunsky<double> verblunsky_levinson(const CircleMoments<double>&, std::size_t);
extern template BasicVerblunsky<extended> verblunsky_levinson(const CircleMoments<extended>&, std::size_t);
extern template double toeplitz_det(const CircleMoments<double>&, std::size_t);
extern template extended toeplitz_det(const CircleMoments<extended>&, std::size_t);
extern template wide toeplitz_det(const CircleMoments<wide>&, std::size_t);
extern template double toeplitz_logdet(const CircleMoments<double>&, std::size_t);
extern template extended toeplitz_logdet(const CircleMoments<extended>&, std::size_t);
extern template wide toeplitz_logdet(const CircleMoments<wide>&, std::size_t);
extern template BasicVerblunsky<double> schur_geronimus(const CircleMoments<double>&, std::size_t);
extern template BasicVerblunsky<extended> schur_geronimus(const CircleMoments<extended>&, std::size_t);

}  // namespace rhop
