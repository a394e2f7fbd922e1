#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rhop/precision.hpp"

namespace rhop {

/// Finite Laurent series sum_{k=kmin}^{kmax} c_k z^k; on the unit circle a
/// trigonometric polynomial in theta.
struct FourierSeries {
  int kmin = 0;
  std::vector<cplx> c;

  int kmax() const { return kmin + static_cast<int>(c.size()) - 1; }
  cplx coeff(int k) const {
    return (k < kmin || k > kmax()) ? cplx{} : c[static_cast<std::size_t>(k - kmin)];
  }
  cplx operator()(cplx z) const;
  cplx at_angle(double theta) const;

  FourierSeries operator*(const FourierSeries& o) const;
  FourierSeries operator+(const FourierSeries& o) const;
  FourierSeries operator-(const FourierSeries& o) const;
  FourierSeries scaled(cplx s) const;
  /// Keeps modes kmin..kmax (others dropped, missing ones zero).
  FourierSeries restricted(int lo, int hi) const;
  static FourierSeries monomial(int k, cplx value = 1.0);
};

/// Trapezoid-rule Fourier coefficients c_k = (1/N) sum_j f(theta_j) e^{-ik theta_j}
/// on the uniform grid theta_j = 2 pi j / N, for kmin <= k <= kmax.
FourierSeries fourier_coefficients(const std::function<cplx(double)>& f, std::size_t grid,
                                   int kmin, int kmax);
FourierSeries fourier_coefficients(const std::vector<cplx>& samples, int kmin, int kmax);

}  // namespace rhop
