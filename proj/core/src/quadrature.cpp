#include "rhop/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rhop::quad {

template <class T>
Rule<T> gauss_legendre(std::size_t n) {
  using std::abs;
  using std::cos;
  Rule<T> r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const T eps = std::numeric_limits<T>::epsilon() * 16;
  const T piT = pi<T>();
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    T x = cos(piT * (T(static_cast<double>(i)) + T(0.75)) / (T(static_cast<double>(n)) + T(0.5)));
    T dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      T p0(1), p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        T kk(static_cast<double>(k));
        T p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = T(1);
      }
      dp = T(static_cast<double>(n)) * (x * p1 - p0) / (x * x - 1);
      T dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= eps) break;
    }
    // Recompute the derivative at the converged node.
    T p0(1), p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      T kk(static_cast<double>(k));
      T p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = T(1);
    dp = T(static_cast<double>(n)) * (x * p1 - p0) / (x * x - 1);
    const T w = T(2) / ((1 - x * x) * dp * dp);
    r.nodes[i] = x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = -x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = T(0);
  return r;
}

Rule<double> golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                          double mass) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) e(i) = offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  Rule<double> r;
  r.nodes.resize(diag.size());
  r.weights.resize(diag.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    r.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
  }
  return r;
}

template <class T>
Rule<T> gauss_hermite(std::size_t n) {
  std::vector<double> diag(n, 0.0), off(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) off[k] = std::sqrt((k + 1) / 2.0);
  Rule<double> seed = golub_welsch(diag, off, std::sqrt(M_PI));
  // Symmetrize: x_i = -x_{n-1-i} exactly.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (seed.nodes[n - 1 - i] - seed.nodes[i]);
    seed.nodes[i] = -x;
    seed.nodes[n - 1 - i] = x;
  }
  if (n % 2 == 1) seed.nodes[n / 2] = 0.0;
  if constexpr (std::is_same_v<T, double>) {
    return seed;
  } else {
    using std::abs;
    using std::sqrt;
    Rule<T> r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const T eps = std::numeric_limits<T>::epsilon() * 16;
    const T sqrt_pi = sqrt(pi<T>());
    // Orthonormal Hermite polynomials for e^{-x^2}/sqrt(pi):
    // b_k p_{k+1} = x p_k - b_{k-1} p_{k-1}, b_k = sqrt((k+1)/2).
    std::vector<T> b(n + 1);
    for (std::size_t k = 0; k <= n; ++k) b[k] = sqrt(T(static_cast<double>(k + 1)) / 2);
    auto eval = [&](const T& x, T& pn, T& dpn, T& sumsq) {
      T p0(1), p1 = x / b[0];
      T d0(0), d1 = T(1) / b[0];
      sumsq = T(1);
      if (n == 1) {
        pn = p1;
        dpn = d1;
        return;
      }
      sumsq += p1 * p1;
      for (std::size_t k = 1; k < n; ++k) {
        T p2 = (x * p1 - b[k - 1] * p0) / b[k];
        T d2 = (p1 + x * d1 - b[k - 1] * d0) / b[k];
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        if (k + 1 < n) sumsq += p1 * p1;
      }
      pn = p1;
      dpn = d1;
    };
    for (std::size_t i = 0; i < n; ++i) {
      T x(seed.nodes[i]);
      T pn, dpn, s;
      if (n % 2 == 1 && i == n / 2) {
        x = T(0);
      } else {
        for (int it = 0; it < 60; ++it) {
          eval(x, pn, dpn, s);
          T dx = pn / dpn;
          x -= dx;
          if (abs(dx) <= eps * (1 + abs(x))) break;
        }
      }
      eval(x, pn, dpn, s);
      r.nodes[i] = x;
      r.weights[i] = sqrt_pi / s;
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
      T x = (r.nodes[n - 1 - i] - r.nodes[i]) / 2;
      r.nodes[i] = -x;
      r.nodes[n - 1 - i] = x;
      T w = (r.weights[i] + r.weights[n - 1 - i]) / 2;
      r.weights[i] = w;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }
}

Rule<double> graded_rule(double a, double b, double focus, double scale, std::size_t order) {
  if (!(b > a)) throw std::invalid_argument("graded_rule: empty interval");
  focus = std::clamp(focus, a, b);
  scale = std::max(scale, 1e-14);
  std::vector<double> breaks{a, b, focus};
  for (double h = scale; h < (b - a); h *= 2.0) {
    if (focus - h > a) breaks.push_back(focus - h);
    if (focus + h < b) breaks.push_back(focus + h);
  }
  // Unit-width panels away from the focus keep smooth tails resolved.
  for (double x = std::ceil(a); x < b; x += 1.0) breaks.push_back(x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double u, double v) { return std::abs(u - v) < 1e-15; }),
               breaks.end());
  Rule<double> ref = gauss_legendre<double>(order);
  Rule<double> out;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < order; ++i) {
      out.nodes.push_back(mid + half * ref.nodes[i]);
      out.weights.push_back(half * ref.weights[i]);
    }
  }
  return out;
}

template Rule<double> gauss_legendre<double>(std::size_t);
template Rule<extended> gauss_legendre<extended>(std::size_t);
template Rule<double> gauss_hermite<double>(std::size_t);
template Rule<extended> gauss_hermite<extended>(std::size_t);

}  // namespace rhop::quad
