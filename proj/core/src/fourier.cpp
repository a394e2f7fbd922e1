#include "rhop/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace rhop {

cplx FourierSeries::operator()(cplx z) const {
  if (c.empty()) return {};
  // Horner in z for modes >= 0 and in 1/z for modes < 0, so neither part
  // overflows away from the unit circle.
  cplx pos{}, neg{};
  for (int k = kmax(); k >= 0 && k >= kmin; --k) pos = pos * z + coeff(k);
  if (kmin > 0) pos *= std::pow(z, kmin);
  const cplx inv = 1.0 / z;
  for (int k = kmin; k < 0 && k <= kmax(); ++k) neg = (neg + coeff(k)) * inv;
  if (kmax() < -1) neg *= std::pow(inv, -kmax() - 1);
  return pos + neg;
}

cplx FourierSeries::at_angle(double theta) const {
  return (*this)(std::polar(1.0, theta));
}

FourierSeries FourierSeries::operator*(const FourierSeries& o) const {
  if (c.empty() || o.c.empty()) return {};
  FourierSeries r;
  r.kmin = kmin + o.kmin;
  r.c.assign(c.size() + o.c.size() - 1, cplx{});
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{}) continue;
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  return r;
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
  if (c.empty()) return o;
  if (o.c.empty()) return *this;
  const int lo = std::min(kmin, o.kmin);
  const int hi = std::max(kmax(), o.kmax());
  FourierSeries r;
  r.kmin = lo;
  r.c.resize(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) r.c[static_cast<std::size_t>(k - lo)] = coeff(k) + o.coeff(k);
  return r;
}

FourierSeries FourierSeries::operator-(const FourierSeries& o) const {
  return *this + o.scaled(-1.0);
}

FourierSeries FourierSeries::scaled(cplx s) const {
  FourierSeries r = *this;
  for (auto& x : r.c) x *= s;
  return r;
}

FourierSeries FourierSeries::restricted(int lo, int hi) const {
  FourierSeries r;
  if (hi < lo) return r;
  r.kmin = lo;
  r.c.resize(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) r.c[static_cast<std::size_t>(k - lo)] = coeff(k);
  return r;
}

FourierSeries FourierSeries::monomial(int k, cplx value) {
  return FourierSeries{k, {value}};
}

FourierSeries fourier_coefficients(const std::vector<cplx>& samples, int kmin, int kmax) {
  const std::size_t n = samples.size();
  FourierSeries r;
  r.kmin = kmin;
  r.c.assign(static_cast<std::size_t>(kmax - kmin + 1), cplx{});
  std::vector<cplx> twiddle(n);
  for (std::size_t j = 0; j < n; ++j) {
    twiddle[j] = std::polar(1.0, -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n));
  }
  for (int k = kmin; k <= kmax; ++k) {
    cplx acc{};
    // Reduce k*j modulo n so the twiddle argument stays small.
    const long long kn = ((static_cast<long long>(k) % static_cast<long long>(n)) +
                          static_cast<long long>(n)) % static_cast<long long>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const long long idx = (kn * static_cast<long long>(j)) % static_cast<long long>(n);
      acc += samples[j] * twiddle[static_cast<std::size_t>(idx)];
    }
    r.c[static_cast<std::size_t>(k - kmin)] = acc / static_cast<double>(n);
  }
  return r;
}

FourierSeries fourier_coefficients(const std::function<cplx(double)>& f, std::size_t grid,
                                   int kmin, int kmax) {
  std::vector<cplx> samples(grid);
  for (std::size_t j = 0; j < grid; ++j) samples[j] = f(2.0 * M_PI * static_cast<double>(j) / grid);
  return fourier_coefficients(samples, kmin, kmax);
}

}  // namespace rhop
