#include <cmath>

#include "rhop/opcircle.hpp"
#include "rhop/polynomial.hpp"

namespace rhop {

namespace {

const char* kModule = "opcircle";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

template <class C>
std::vector<C> series_divide(const std::vector<C>& num, const std::vector<C>& den, std::size_t L) {
  std::vector<C> q(L, C(0));
  for (std::size_t k = 0; k < L; ++k) {
    C s = k < num.size() ? num[k] : C(0);
    for (std::size_t j = 1; j <= k && j < den.size(); ++j) s -= den[j] * q[k - j];
    q[k] = s / den[0];
  }
  return q;
}

}  // namespace

template <class Real>
std::vector<complex_t<Real>> schur_series(const CircleMoments<Real>& moments, std::size_t L) {
  using C = complex_t<Real>;
  if (L > moments.order()) fail(ErrorCode::insufficient_moments, "Schur series needs mu_0..mu_L");
  const C mu0 = moments.mu[0];
  std::vector<C> s1(L), s0(L);
  s0[0] = C(1);
  for (std::size_t k = 0; k < L; ++k) {
    s1[k] = moments.mu[k + 1] / mu0;
    if (k >= 1) s0[k] = moments.mu[k] / mu0;
  }
  return series_divide(s1, s0, L);
}

template <class Real>
std::vector<complex_t<Real>> schur_step(const std::vector<complex_t<Real>>& f) {
  using C = complex_t<Real>;
  using std::abs;
  if (f.size() < 2) fail(ErrorCode::insufficient_moments, "Schur series exhausted");
  const C a = f[0];
  if (!(Real(abs(a)) < 1)) fail(ErrorCode::schur_parameter_out_of_disk, "|f_n(0)| >= 1");
  // numerator (f - a) / z, denominator 1 - conj(a) f
  std::vector<C> num(f.begin() + 1, f.end());
  std::vector<C> den(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) den[k] = -conjugate(a) * f[k];
  den[0] += C(1);
  return series_divide(num, den, f.size() - 1);
}

template <class Real>
BasicVerblunsky<Real> schur_geronimus(const CircleMoments<Real>& moments, std::size_t N) {
  using std::abs;
  using std::sqrt;
  if (moments.order() < N) fail(ErrorCode::insufficient_moments, "need moments through order N");
  const std::size_t L = std::min(N + 8, moments.order());
  auto f = schur_series(moments, L);
  BasicVerblunsky<Real> out;
  out.kappa.push_back(1 / sqrt(Real(real_part(moments.mu[0]))));
  for (std::size_t n = 0; n < N; ++n) {
    const auto a = f[0];
    const Real m = abs(a);
    if (!(m < 1)) {
      fail(ErrorCode::schur_parameter_out_of_disk,
           "|f_" + std::to_string(n) + "(0)| >= 1: moments underresolved");
    }
    out.alpha.push_back(a);
    out.rho.push_back(sqrt(1 - m * m));
    out.kappa.push_back(out.kappa.back() / out.rho.back());
    if (n + 1 < N) f = schur_step<Real>(f);
  }
  return out;
}

cplx schur_iterate_series(const CircleMoments<double>& moments, std::size_t n, cplx z) {
  auto f = schur_series(moments, moments.order());
  for (std::size_t k = 0; k < n; ++k) f = schur_step<double>(f);
  return poly::eval(f, z);
}

cplx schur_iterate_pointwise(cplx f0, const VerblunskySeq& v, std::size_t n, cplx z) {
  if (z == 0.0) fail(ErrorCode::domain_error, "pointwise Schur iteration needs z != 0");
  if (n > v.size()) fail(ErrorCode::invalid_argument, "degree beyond stored data");
  cplx f = f0;
  for (std::size_t k = 0; k < n; ++k) f = (f - v.alpha[k]) / (1.0 - std::conj(v.alpha[k]) * f) / z;
  return f;
}

cplx schur_iterate_integral(const Weight& w, const VerblunskySeq& v, std::size_t n, cplx z) {
  if (w.contour() != Contour::circle) fail(ErrorCode::invalid_argument, "needs a circle weight");
  if (std::abs(z) > 0.95) fail(ErrorCode::domain_error, "quadrature unreliable for |z| > 0.95");
  auto [phi, star] = szego_monic_coefficients(v, n);
  auto ratio = [&](std::size_t grid) {
    cplx num{}, den{};
    for (std::size_t j = 0; j < grid; ++j) {
      const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid);
      const cplx s = std::polar(1.0, th);
      const cplx sn = std::polar(1.0, -static_cast<double>(n) * th);
      const double om = w(th);
      num += poly::eval(star, s) * sn / (s - z) * om;
      den += poly::eval(phi, s) * sn * s / (s - z) * om;
    }
    return num / den;
  };
  std::size_t grid = 512;
  cplx prev = ratio(grid);
  for (; grid <= (std::size_t{1} << 16); grid *= 2) {
    const cplx next = ratio(2 * grid);
    if (std::abs(next - prev) <= 1e-14 * (1.0 + std::abs(next))) return next;
    prev = next;
  }
  fail(ErrorCode::grid_underresolved, "Schur-iterate quadrature did not converge");
}

WallPair wall_polynomials(const VerblunskySeq& v, std::size_t n) {
  if (n == 0 || n > v.size()) fail(ErrorCode::invalid_argument, "Wall polynomials need 1 <= n <= N");
  // Entries of the running product, as polynomials in z.
  std::vector<cplx> m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = v.alpha[k];
    // [[m11, m12], [m21, m22]] * [[z, a], [conj(a) z, 1]]
    auto col1 = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
      return poly::shift(poly::add(x, y, std::conj(a)), 1);
    };
    auto col2 = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
      std::vector<cplx> r = y;
      return poly::add(r, x, a);
    };
    auto n11 = col1(m11, m12), n12 = col2(m11, m12);
    auto n21 = col1(m21, m22), n22 = col2(m21, m22);
    m11 = std::move(n11);
    m12 = std::move(n12);
    m21 = std::move(n21);
    m22 = std::move(n22);
  }
  m12.resize(n);
  m22.resize(n);
  return {n, m12, m22};
}

WallReport wall_pinter_nevai(const VerblunskySeq& v, std::size_t n) {
  WallReport r;
  r.pair = wall_polynomials(v, n);
  const auto& A = r.pair.A;
  const auto& B = r.pair.B;
  auto [phi, star] = szego_monic_coefficients(v, n);
  // Phi_n^* = B - z A
  std::vector<cplx> rhs_star = poly::add(B, poly::shift(A, 1), cplx(-1.0));
  // Phi_n = z B^* - A^*   (reverses at degree n - 1)
  std::vector<cplx> rhs = poly::add(poly::shift(poly::reverse(B, n - 1), 1), poly::reverse(A, n - 1), cplx(-1.0));
  r.residual_star = poly::max_abs_diff(star, rhs_star);
  r.residual = poly::max_abs_diff(phi, rhs);
  return r;
}

template std::vector<cplx> schur_series<double>(const CircleMoments<double>&, std::size_t);
template std::vector<complex_t<extended>> schur_series<extended>(const CircleMoments<extended>&, std::size_t);
template std::vector<cplx> schur_step<double>(const std::vector<cplx>&);
template std::vector<complex_t<extended>> schur_step<extended>(const std::vector<complex_t<extended>>&);
template BasicVerblunsky<double> schur_geronimus(const CircleMoments<double>&, std::size_t);
template BasicVerblunsky<extended> schur_geronimus(const CircleMoments<extended>&, std::size_t);

}  // namespace rhop
