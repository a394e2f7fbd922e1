#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rhop/error.hpp"
#include "rhop/measures.hpp"
#include "rhop/precision.hpp"
#include "rhop/quadrature.hpp"

namespace rhop {

/// Three-term recurrence b_{n-1} p_{n-1} + a_n p_n + b_n p_{n+1} = x p_n for
/// orthonormal p_n with leading coefficients k_n.
template <class Real>
struct BasicRecurrenceLine {
  std::vector<Real> a;  ///< a_0..a_{N-1}
  std::vector<Real> b;  ///< b_0..b_{N-2}, positive
  std::vector<Real> k;  ///< k_0..k_{N-1}
  std::optional<Breakdown> breakdown;

  std::size_t size() const { return a.size(); }
};
using RecurrenceLine = BasicRecurrenceLine<double>;

/// Monic recurrence P_{n+1} = (x - a_n) P_n - b_{n-1}^2 P_{n-1}, stored by
/// squares so it stays exact over the rationals.  h_n = ||P_n||^2 = k_n^{-2}.
template <class Real>
struct MonicRecurrence {
  std::vector<Real> a;
  std::vector<Real> b2;
  std::vector<Real> h;
  std::optional<Breakdown> breakdown;
};

/// Gram-Schmidt on the moment functional.  Uses m_0..m_{2N}; stops with a
/// breakdown record if some h_n <= 0.
template <class Real>
MonicRecurrence<Real> monic_recurrence_from_moments(const std::vector<Real>& m, std::size_t N);

/// Stieltjes procedure on a positive discretization of the measure.
template <class Real>
BasicRecurrenceLine<Real> stieltjes(const quad::Rule<Real>& rule, std::size_t N);

template <class To, class From>
BasicRecurrenceLine<To> to_orthonormal(const MonicRecurrence<From>& mr);

/// Recurrence coefficients a_0..a_{N-1}, b_0..b_{N-2}, k_0..k_{N-1} of a
/// line weight.  `standard` and `extended` run Stieltjes on a converged
/// discretization; `exact` runs rational Gram-Schmidt when the weight has
/// closed-form moments (otherwise Error::invalid_argument).
RecurrenceLine recurrence_from_measure(const WeightSpec& spec, std::size_t N,
                                       Precision precision = Precision::standard);
RecurrenceLine recurrence_from_measure(const Weight& w, std::size_t N,
                                       Precision precision = Precision::standard);
BasicRecurrenceLine<extended> recurrence_from_measure_ext(const Weight& w, std::size_t N);

/// Hankel determinant D_n = det(m_{j+k})_{j,k=0..n}.
template <class Real>
Real hankel_det(const std::vector<Real>& m, std::size_t n);

struct HankelDet {
  extended value;
  Precision precision_used = Precision::standard;
};

/// D_n of a line weight.  Starts in `precision`; a double computation whose
/// pivots lose more than 10 digits escalates to extended precision.
HankelDet hankel_det(const Weight& w, std::size_t n, Precision precision = Precision::standard);

/// p_0(x)..p_n(x) by the forward recurrence.
template <class X>
std::vector<X> eval_opl(const RecurrenceLine& rec, std::size_t n, const X& x) {
  if (n >= rec.size() || n > rec.b.size() + 1) {
    throw Error(ErrorCode::invalid_argument, "opline", "degree beyond stored recurrence");
  }
  std::vector<X> p(n + 1);
  p[0] = X(rec.k[0]);
  if (n >= 1) p[1] = (x - rec.a[0]) * p[0] / rec.b[0];
  for (std::size_t j = 1; j < n; ++j) {
    p[j + 1] = ((x - rec.a[j]) * p[j] - rec.b[j - 1] * p[j - 1]) / rec.b[j];
  }
  return p;
}

/// Monic P_0(x)..P_n(x) = p_j / k_j.
template <class X>
std::vector<X> eval_monic(const RecurrenceLine& rec, std::size_t n, const X& x) {
  if (n > rec.size()) throw Error(ErrorCode::invalid_argument, "opline", "degree beyond stored recurrence");
  std::vector<X> p(n + 1);
  p[0] = X(1);
  if (n >= 1) p[1] = x - rec.a[0];
  for (std::size_t j = 1; j < n; ++j) {
    p[j + 1] = (x - rec.a[j]) * p[j] - rec.b[j - 1] * rec.b[j - 1] * p[j - 1];
  }
  return p;
}

/// Ascending coefficients of the monic P_0..P_n.  Requires a_0..a_{n-1}.
std::vector<std::vector<double>> monic_coefficients(const RecurrenceLine& rec, std::size_t n);

struct JacobiMatrix {
  std::vector<double> diag;     ///< a_0..a_{N-1}
  std::vector<double> offdiag;  ///< b_0..b_{N-2}

  std::size_t size() const { return diag.size(); }
};

struct DiscreteMeasure {
  std::vector<double> atoms;    ///< strictly increasing
  std::vector<double> weights;  ///< positive, sum 1
};

JacobiMatrix jacobi_from_recurrence(const RecurrenceLine& rec, std::size_t N);
/// Eigenvalues of L and squared first components of its eigenvectors.
DiscreteMeasure spectral_measure(const JacobiMatrix& L);
/// Inverse map: the N x N Jacobi matrix of a discrete measure with N atoms,
/// via Lanczos with full reorthogonalization.
JacobiMatrix jacobi_from_measure(const DiscreteMeasure& mu);
/// Same, with atoms weighted by exp(log_weights) (any additive shift is
/// immaterial); runs in extended precision when the spread is beyond double.
JacobiMatrix jacobi_from_log_weights(const std::vector<double>& atoms,
                                     const std::vector<double>& log_weights);

void validate(const JacobiMatrix& L);

}  // namespace rhop
