#include "rhop/opline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rhop/linalg.hpp"

namespace rhop {

namespace {

const char* kModule = "opline";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

template <class Real>
Real functional(const std::vector<Real>& c, const std::vector<Real>& m, std::size_t shift) {
  Real s(0);
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * m[i + shift];
  return s;
}

template <class Real>
std::vector<Real> square(const std::vector<Real>& c) {
  std::vector<Real> r(2 * c.size() - 1, Real(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) r[i + j] += c[i] * c[j];
  return r;
}

template <class Real>
void lanczos(const std::vector<Real>& atoms, std::vector<Real> q, JacobiMatrix& out) {
  using std::sqrt;
  const std::size_t N = atoms.size();
  std::vector<std::vector<Real>> basis;
  basis.reserve(N);
  Real nrm(0);
  for (auto& v : q) nrm += v * v;
  nrm = sqrt(nrm);
  for (auto& v : q) v /= nrm;
  out.diag.assign(N, 0.0);
  out.offdiag.assign(N > 0 ? N - 1 : 0, 0.0);
  for (std::size_t j = 0; j < N; ++j) {
    basis.push_back(q);
    std::vector<Real> r(N);
    Real a(0);
    for (std::size_t i = 0; i < N; ++i) {
      r[i] = atoms[i] * q[i];
      a += q[i] * r[i];
    }
    out.diag[j] = to_double(a);
    if (j + 1 == N) break;
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) {
        Real d(0);
        for (std::size_t i = 0; i < N; ++i) d += v[i] * r[i];
        for (std::size_t i = 0; i < N; ++i) r[i] -= d * v[i];
      }
    }
    Real b(0);
    for (auto& v : r) b += v * v;
    b = sqrt(b);
    const double bd = to_double(b);
    if (!(bd > 0.0) || !std::isfinite(bd)) {
      fail(ErrorCode::dynamic_range_exceeded,
           "Lanczos breakdown at step " + std::to_string(j) + ": atom weights out of range");
    }
    out.offdiag[j] = bd;
    for (std::size_t i = 0; i < N; ++i) q[i] = r[i] / b;
  }
}

bool rule_is_exact(const Weight& w) {
  return w.gaussian_exponent() > 0.0 && w.gaussian_factor_is_constant();
}

template <class Real>
BasicRecurrenceLine<Real> converged_stieltjes(const Weight& w, std::size_t N) {
  using std::abs;
  quad::Rule<Real> r = line_rule<Real>(w, 2 * N + 1, std::max<std::size_t>(4 * N, 8));
  BasicRecurrenceLine<Real> rec = stieltjes(r, N);
  if (rule_is_exact(w)) return rec;
  quad::Rule<Real> r2 = line_rule<Real>(w, 2 * N + 1, 2 * r.size());
  BasicRecurrenceLine<Real> rec2 = stieltjes(r2, N);
  const Real tol = std::is_same_v<Real, double> ? Real(1e-11) : Real(1e-35);
  for (std::size_t n = 0; n < std::min(rec.a.size(), rec2.a.size()); ++n) {
    Real scale = 1 + abs(rec2.a[n]) + (n < rec2.b.size() ? abs(rec2.b[n]) : Real(0));
    Real d = abs(rec.a[n] - rec2.a[n]);
    if (n < rec.b.size() && n < rec2.b.size()) d = std::max<Real>(d, Real(abs(rec.b[n] - rec2.b[n])));
    if (d > tol * scale) {
      fail(ErrorCode::insufficient_decay, "discretization of '" + w.label() +
                                              "' not converged at degree " + std::to_string(n));
    }
  }
  return rec2;
}

}  // namespace

template <class Real>
MonicRecurrence<Real> monic_recurrence_from_moments(const std::vector<Real>& m, std::size_t N) {
  if (N == 0) return {};
  if (m.size() < 2 * N) {
    fail(ErrorCode::insufficient_moments,
         "need moments m_0..m_" + std::to_string(2 * N - 1) + " for " + std::to_string(N) + " coefficients");
  }
  MonicRecurrence<Real> out;
  std::vector<Real> prev, cur{Real(1)};
  for (std::size_t n = 0; n < N; ++n) {
    auto sq = square(cur);
    const Real h = functional(sq, m, 0);
    if (!(h > 0)) {
      out.breakdown = Breakdown{n, "moment functional not positive at degree " + std::to_string(n)};
      return out;
    }
    if (n > 0) out.b2.push_back(h / out.h.back());
    out.h.push_back(h);
    const Real a = functional(sq, m, 1) / h;
    out.a.push_back(a);
    if (n + 1 == N) break;
    // P_{n+1} = (x - a_n) P_n - b_{n-1}^2 P_{n-1}
    std::vector<Real> next(cur.size() + 1, Real(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += cur[i];
      next[i] -= a * cur[i];
    }
    if (n > 0) {
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= out.b2.back() * prev[i];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

template <class Real>
BasicRecurrenceLine<Real> stieltjes(const quad::Rule<Real>& rule, std::size_t N) {
  using std::sqrt;
  const std::size_t M = rule.size();
  if (M < N) fail(ErrorCode::invalid_argument, "discretization has fewer nodes than requested degree");
  BasicRecurrenceLine<Real> out;
  if (N == 0) return out;
  Real m0(0);
  for (const auto& l : rule.weights) m0 += l;
  if (!(m0 > 0)) fail(ErrorCode::degenerate_measure, "measure has non-positive mass");
  std::vector<Real> p_prev(M, Real(0)), p(M, 1 / sqrt(m0));
  out.k.push_back(1 / sqrt(m0));
  for (std::size_t n = 0; n < N; ++n) {
    Real a(0);
    for (std::size_t i = 0; i < M; ++i) a += rule.weights[i] * rule.nodes[i] * p[i] * p[i];
    out.a.push_back(a);
    if (n + 1 == N) break;
    std::vector<Real> r(M);
    for (std::size_t i = 0; i < M; ++i) {
      r[i] = (rule.nodes[i] - a) * p[i] - (n > 0 ? out.b[n - 1] * p_prev[i] : Real(0));
    }
    Real b2(0);
    for (std::size_t i = 0; i < M; ++i) b2 += rule.weights[i] * r[i] * r[i];
    const Real b = sqrt(b2);
    if (!(b > Real(1e-300))) {
      out.breakdown = Breakdown{n + 1, "Stieltjes breakdown: discretization exhausted"};
      return out;
    }
    out.b.push_back(b);
    out.k.push_back(out.k.back() / b);
    for (std::size_t i = 0; i < M; ++i) r[i] /= b;
    p_prev = std::move(p);
    p = std::move(r);
  }
  return out;
}

template <class To, class From>
BasicRecurrenceLine<To> to_orthonormal(const MonicRecurrence<From>& mr) {
  using std::sqrt;
  BasicRecurrenceLine<To> out;
  for (const auto& a : mr.a) out.a.push_back(static_cast<To>(a));
  for (const auto& b2 : mr.b2) out.b.push_back(sqrt(static_cast<To>(b2)));
  for (const auto& h : mr.h) out.k.push_back(1 / sqrt(static_cast<To>(h)));
  out.breakdown = mr.breakdown;
  return out;
}

RecurrenceLine recurrence_from_measure(const Weight& w, std::size_t N, Precision precision) {
  switch (precision) {
    case Precision::standard:
      return converged_stieltjes<double>(w, N);
    case Precision::extended: {
      auto e = converged_stieltjes<extended>(w, N);
      RecurrenceLine out;
      for (auto& v : e.a) out.a.push_back(to_double(v));
      for (auto& v : e.b) out.b.push_back(to_double(v));
      for (auto& v : e.k) out.k.push_back(to_double(v));
      out.breakdown = e.breakdown;
      return out;
    }
    case Precision::exact:
      break;
  }
  fail(ErrorCode::invalid_argument, "exact recurrence needs a builtin weight with closed-form moments");
}

RecurrenceLine recurrence_from_measure(const WeightSpec& spec, std::size_t N, Precision precision) {
  if (precision == Precision::exact) {
    auto m = exact_line_moments(spec, 2 * N);
    if (!m) {
      fail(ErrorCode::invalid_argument,
           "weight '" + spec.text() + "' has no closed-form moments; use double or extended");
    }
    return to_orthonormal<double>(monic_recurrence_from_moments(m->m, N));
  }
  return recurrence_from_measure(Weight::from_spec(spec), N, precision);
}

BasicRecurrenceLine<extended> recurrence_from_measure_ext(const Weight& w, std::size_t N) {
  return converged_stieltjes<extended>(w, N);
}

template <class Real>
Real hankel_det(const std::vector<Real>& m, std::size_t n) {
  if (m.size() < 2 * n + 1) fail(ErrorCode::insufficient_moments, "Hankel determinant needs m_0..m_2n");
  DenseMatrix<Real> h(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) h(i, j) = m[i + j];
  return determinant(std::move(h));
}

HankelDet hankel_det(const Weight& w, std::size_t n, Precision precision) {
  LineMomentOptions o;
  o.check_definiteness = false;
  auto build = [n](const auto& m) {
    using R = std::decay_t<decltype(m[0])>;
    DenseMatrix<R> h(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) h(i, j) = m[i + j];
    return ldl_hermitian<R>(h);
  };
  if (precision == Precision::standard) {
    auto m = line_moments<double>(w, 2 * n, o).m;
    auto ldl = build(m);
    if (!ldl.failed_at) {
      const auto [lo, hi] = std::minmax_element(ldl.pivots.begin(), ldl.pivots.end());
      if (*lo / *hi > 1e-10) {
        extended d(1);
        for (double p : ldl.pivots) d *= p;
        return {d, Precision::standard};
      }
    }
  } else if (precision == Precision::exact) {
    fail(ErrorCode::invalid_argument, "exact Hankel determinants need rational moments");
  }
  auto m = line_moments<extended>(w, 2 * n, o).m;
  auto ldl = build(m);
  if (ldl.failed_at) {
    fail(ErrorCode::precision_exhausted,
         "Hankel matrix not positive definite at order " + std::to_string(*ldl.failed_at) +
             " in extended precision");
  }
  extended d(1);
  for (const auto& p : ldl.pivots) d *= p;
  return {d, Precision::extended};
}

std::vector<std::vector<double>> monic_coefficients(const RecurrenceLine& rec, std::size_t n) {
  if (n > rec.a.size() || (n >= 2 && n - 2 >= rec.b.size())) {
    fail(ErrorCode::invalid_argument, "degree beyond stored recurrence");
  }
  std::vector<std::vector<double>> P{{1.0}};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> next(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      next[i + 1] += P[j][i];
      next[i] -= rec.a[j] * P[j][i];
    }
    if (j > 0) {
      const double b2 = rec.b[j - 1] * rec.b[j - 1];
      for (std::size_t i = 0; i < P[j - 1].size(); ++i) next[i] -= b2 * P[j - 1][i];
    }
    P.push_back(std::move(next));
  }
  return P;
}

void validate(const JacobiMatrix& L) {
  if (L.diag.empty()) fail(ErrorCode::invalid_argument, "empty Jacobi matrix");
  if (L.offdiag.size() + 1 != L.diag.size()) {
    fail(ErrorCode::invalid_argument, "Jacobi matrix needs N-1 off-diagonal entries");
  }
  for (double b : L.offdiag) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      fail(ErrorCode::invalid_argument, "Jacobi off-diagonal entries must be positive");
    }
  }
  for (double a : L.diag) {
    if (!std::isfinite(a)) fail(ErrorCode::invalid_argument, "Jacobi diagonal must be finite");
  }
}

JacobiMatrix jacobi_from_recurrence(const RecurrenceLine& rec, std::size_t N) {
  if (N == 0 || N > rec.a.size() || N - 1 > rec.b.size()) {
    fail(ErrorCode::invalid_argument, "recurrence too short for the requested Jacobi section");
  }
  JacobiMatrix L;
  L.diag.assign(rec.a.begin(), rec.a.begin() + static_cast<std::ptrdiff_t>(N));
  L.offdiag.assign(rec.b.begin(), rec.b.begin() + static_cast<std::ptrdiff_t>(N - 1));
  return L;
}

DiscreteMeasure spectral_measure(const JacobiMatrix& L) {
  validate(L);
  const auto N = static_cast<Eigen::Index>(L.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(L.diag.data(), N);
  Eigen::VectorXd e(std::max<Eigen::Index>(N - 1, 0));
  for (Eigen::Index i = 0; i + 1 < N; ++i) e(i) = L.offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) fail(ErrorCode::internal_error, "tridiagonal eigensolver failed");
  DiscreteMeasure mu;
  double total = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    mu.atoms.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    mu.weights.push_back(v * v);
    total += v * v;
  }
  for (auto& w : mu.weights) w /= total;
  for (std::size_t i = 1; i < mu.atoms.size(); ++i) {
    if (!(mu.atoms[i] > mu.atoms[i - 1])) {
      fail(ErrorCode::internal_error, "repeated eigenvalue in a Jacobi matrix");
    }
  }
  return mu;
}

JacobiMatrix jacobi_from_measure(const DiscreteMeasure& mu) {
  if (mu.atoms.empty() || mu.atoms.size() != mu.weights.size()) {
    fail(ErrorCode::invalid_argument, "discrete measure needs matching atoms and weights");
  }
  std::vector<double> q;
  for (double w : mu.weights) {
    if (!(w > 0.0)) fail(ErrorCode::invalid_argument, "discrete measure weights must be positive");
    q.push_back(std::sqrt(w));
  }
  JacobiMatrix L;
  lanczos<double>(mu.atoms, q, L);
  return L;
}

JacobiMatrix jacobi_from_log_weights(const std::vector<double>& atoms,
                                     const std::vector<double>& log_weights) {
  if (atoms.empty() || atoms.size() != log_weights.size()) {
    fail(ErrorCode::invalid_argument, "atoms and weights must match");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  const double bottom = *std::min_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top) || !std::isfinite(bottom)) {
    fail(ErrorCode::dynamic_range_exceeded, "non-finite spectral weights");
  }
  JacobiMatrix L;
  // sqrt(w) stays comfortably normal in double while the spread is < 600.
  if (top - bottom < 600.0) {
    std::vector<double> q;
    for (double lw : log_weights) q.push_back(std::exp(0.5 * (lw - top)));
    lanczos<double>(atoms, q, L);
    return L;
  }
  std::vector<extended> xa(atoms.begin(), atoms.end()), q;
  for (double lw : log_weights) q.push_back(exp(extended(0.5 * (lw - top))));
  lanczos<extended>(xa, q, L);
  return L;
}

template MonicRecurrence<double> monic_recurrence_from_moments(const std::vector<double>&, std::size_t);
template MonicRecurrence<extended> monic_recurrence_from_moments(const std::vector<extended>&, std::size_t);
template MonicRecurrence<rational> monic_recurrence_from_moments(const std::vector<rational>&, std::size_t);
template BasicRecurrenceLine<double> stieltjes(const quad::Rule<double>&, std::size_t);
template BasicRecurrenceLine<extended> stieltjes(const quad::Rule<extended>&, std::size_t);
template BasicRecurrenceLine<double> to_orthonormal<double>(const MonicRecurrence<double>&);
template BasicRecurrenceLine<double> to_orthonormal<double>(const MonicRecurrence<rational>&);
template BasicRecurrenceLine<extended> to_orthonormal<extended>(const MonicRecurrence<extended>&);
template BasicRecurrenceLine<extended> to_orthonormal<extended>(const MonicRecurrence<rational>&);
template double hankel_det(const std::vector<double>&, std::size_t);
template extended hankel_det(const std::vector<extended>&, std::size_t);
template rational hankel_det(const std::vector<rational>&, std::size_t);

}  // namespace rhop
