#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "rhop/precision.hpp"

namespace rhop::poly {

// Coefficient vectors are stored in ascending order: c[0] + c[1] z + ...

template <class T, class Z>
auto eval(const std::vector<T>& c, const Z& z) {
  using R = decltype(T() * Z());
  R acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& c) {
  if (c.size() <= 1) return {T(0)};
  std::vector<T> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = T(static_cast<double>(i)) * c[i];
  return d;
}

/// Reverse polynomial q*(z) = z^n conj(q(1/conj z)) taken at formal degree n.
template <class T>
std::vector<T> reverse(const std::vector<T>& c, std::size_t degree) {
  std::vector<T> r(degree + 1, T(0));
  for (std::size_t i = 0; i <= degree && i < c.size(); ++i) r[degree - i] = conjugate(c[i]);
  return r;
}

template <class T>
std::vector<T> multiply(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

template <class T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b, const T& scale = T(1)) {
  if (b.size() > a.size()) a.resize(b.size(), T(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

/// Multiplies by z^k.
template <class T>
std::vector<T> shift(const std::vector<T>& c, std::size_t k) {
  std::vector<T> r(c.size() + k, T(0));
  std::copy(c.begin(), c.end(), r.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

template <class T>
double max_abs_diff(const std::vector<T>& a, const std::vector<T>& b) {
  using std::abs;
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    T x = i < a.size() ? a[i] : T(0);
    T y = i < b.size() ? b[i] : T(0);
    m = std::max(m, static_cast<double>(abs(x - y)));
  }
  return m;
}

}  // namespace rhop::poly
