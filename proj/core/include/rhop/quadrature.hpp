#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "rhop/precision.hpp"

namespace rhop::quad {

template <class T>
struct Rule {
  std::vector<T> nodes;
  std::vector<T> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(nodes[0]) * weights[0]);
    R acc(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on P_n in T.
template <class T>
Rule<T> gauss_legendre(std::size_t n);

/// Gauss-Legendre rule mapped to [a, b].
template <class T>
Rule<T> gauss_legendre(std::size_t n, const T& a, const T& b) {
  Rule<T> ref = gauss_legendre<T>(n);
  const T half = (b - a) / 2;
  const T mid = (b + a) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    ref.nodes[i] = mid + half * ref.nodes[i];
    ref.weights[i] *= half;
  }
  return ref;
}

/// Composite Gauss-Legendre: `panels` equal panels on [a, b], `order` nodes each.
template <class T>
Rule<T> composite_gauss_legendre(const T& a, const T& b, std::size_t panels, std::size_t order) {
  Rule<T> ref = gauss_legendre<T>(order);
  Rule<T> out;
  out.nodes.reserve(panels * order);
  out.weights.reserve(panels * order);
  const T width = (b - a) / T(static_cast<double>(panels));
  for (std::size_t p = 0; p < panels; ++p) {
    const T lo = a + width * T(static_cast<double>(p));
    const T mid = lo + width / 2;
    for (std::size_t i = 0; i < order; ++i) {
      out.nodes.push_back(mid + width / 2 * ref.nodes[i]);
      out.weights.push_back(ref.weights[i] * width / 2);
    }
  }
  return out;
}

/// n-point Gauss-Hermite rule for the weight e^{-x^2} on the real line (total
/// mass sqrt(pi)).  Double-precision nodes come from the symmetric
/// tridiagonal eigenproblem; other types are Newton-polished from those.
template <class T>
Rule<T> gauss_hermite(std::size_t n);

/// Golub-Welsch: Gauss rule of a Jacobi matrix (diag a, off-diagonal b) for a
/// measure of total mass `mass`.
Rule<double> golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                          double mass);

/// Composite rule on [a, b] whose panels are geometrically graded toward
/// `focus`, so integrands with a near-singularity of width ~`scale` at
/// `focus` are resolved.
Rule<double> graded_rule(double a, double b, double focus, double scale, std::size_t order);

extern template Rule<double> gauss_legendre<double>(std::size_t);
extern template Rule<extended> gauss_legendre<extended>(std::size_t);
extern template Rule<double> gauss_hermite<double>(std::size_t);
extern template Rule<extended> gauss_hermite<extended>(std::size_t);

}  // namespace rhop::quad
