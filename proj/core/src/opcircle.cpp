#include "rhop/opcircle.hpp"

#include <cmath>

#include "rhop/linalg.hpp"
#include "rhop/polynomial.hpp"

namespace rhop {

namespace {

const char* kModule = "opcircle";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

// Gram-Schmidt of the monomials.  S is the scalar type of the moments
// (complex, or real when the moments are real and symmetric).
template <class S, class MuAt>
struct GramSchmidt {
  MuAt mu;

  S ip(const std::vector<S>& p, const std::vector<S>& q) const {
    S acc(0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] == S(0)) continue;
      const S cj = conjugate(p[j]);
      for (std::size_t k = 0; k < q.size(); ++k) {
        acc += cj * q[k] * mu(static_cast<long>(j) - static_cast<long>(k));
      }
    }
    return acc;
  }

  // Returns monic Phi_0..Phi_n (as far as positivity allows) and h_n.
  template <class Real>
  void run(std::size_t N, std::vector<std::vector<S>>& phis, std::vector<Real>& h,
           std::optional<Breakdown>& breakdown) const {
    for (std::size_t n = 0; n <= N; ++n) {
      std::vector<S> p(n + 1, S(0));
      p[n] = S(1);
      std::vector<S> zn = p;
      for (std::size_t j = 0; j < n; ++j) {
        const S c = ip(phis[j], zn) / S(h[j]);
        for (std::size_t i = 0; i < phis[j].size(); ++i) p[i] -= c * phis[j][i];
      }
      const Real hn = Real(real_part(ip(p, p)));
      if (!(hn > 0)) {
        breakdown = Breakdown{n, "Toeplitz form not positive at degree " + std::to_string(n)};
        return;
      }
      phis.push_back(std::move(p));
      h.push_back(hn);
    }
  }
};

template <class S, class MuAt>
GramSchmidt<S, MuAt> make_gs(MuAt mu) {
  return GramSchmidt<S, MuAt>{std::move(mu)};
}

}  // namespace

VerblunskySeq verblunsky_from_alpha(std::vector<cplx> alpha, double mu0) {
  VerblunskySeq v;
  v.kappa.push_back(1.0 / std::sqrt(mu0));
  for (const cplx& a : alpha) {
    if (!(std::abs(a) < 1.0)) fail(ErrorCode::schur_parameter_out_of_disk, "|alpha| must be < 1");
    const double r = std::sqrt(1.0 - std::norm(a));
    v.rho.push_back(r);
    v.kappa.push_back(v.kappa.back() / r);
  }
  v.alpha = std::move(alpha);
  return v;
}

template <class Real>
VerblunskySeq to_double(const BasicVerblunsky<Real>& v) {
  VerblunskySeq out;
  for (const auto& a : v.alpha) out.alpha.push_back(to_cplx(a));
  for (const auto& r : v.rho) out.rho.push_back(to_double(r));
  for (const auto& k : v.kappa) out.kappa.push_back(to_double(k));
  out.breakdown = v.breakdown;
  return out;
}

template <class Real>
BasicVerblunsky<Real> verblunsky_levinson(const CircleMoments<Real>& moments, std::size_t N) {
  using C = complex_t<Real>;
  using std::abs;
  using std::sqrt;
  if (moments.order() < N) fail(ErrorCode::insufficient_moments, "need moments through order N");
  auto gs = make_gs<C>([&moments](long k) { return moments.at(k); });
  std::vector<std::vector<C>> phis;
  std::vector<Real> h;
  BasicVerblunsky<Real> out;
  gs.template run<Real>(N, phis, h, out.breakdown);
  for (std::size_t n = 0; n < h.size(); ++n) out.kappa.push_back(1 / sqrt(h[n]));
  for (std::size_t n = 1; n < phis.size(); ++n) {
    const C a = -conjugate(phis[n][0]);
    const Real r2 = 1 - Real(abs(a)) * Real(abs(a));
    if (!(r2 > 0)) {
      out.breakdown = Breakdown{n - 1, "|alpha| >= 1: precision exhausted"};
      out.kappa.resize(n);
      break;
    }
    out.alpha.push_back(a);
    out.rho.push_back(sqrt(r2));
  }
  return out;
}

ExactVerblunsky verblunsky_levinson_exact(const std::vector<rational>& mu, std::size_t N) {
  if (mu.size() < N + 1) fail(ErrorCode::insufficient_moments, "need moments through order N");
  auto gs = make_gs<rational>([&mu](long k) {
    const auto i = static_cast<std::size_t>(k < 0 ? -k : k);
    return i < mu.size() ? mu[i] : rational(0);
  });
  std::vector<std::vector<rational>> phis;
  std::vector<rational> h;
  ExactVerblunsky out;
  gs.template run<rational>(N, phis, h, out.breakdown);
  for (const auto& hn : h) out.kappa2.push_back(1 / hn);
  for (std::size_t n = 1; n < phis.size(); ++n) out.alpha.push_back(-phis[n][0]);
  return out;
}

VerblunskySeq verblunsky_from_weight(const Weight& w, std::size_t N, Precision precision) {
  switch (precision) {
    case Precision::standard:
      return verblunsky_levinson(circle_moments<double>(w, N), N);
    case Precision::extended:
      return to_double(verblunsky_levinson(circle_moments<extended>(w, N), N));
    case Precision::exact:
      break;
  }
  fail(ErrorCode::invalid_argument, "exact Verblunsky data needs a builtin with rational moments");
}

VerblunskySeq verblunsky_from_spec(const WeightSpec& spec, std::size_t N, Precision precision) {
  if (precision != Precision::exact) return verblunsky_from_weight(Weight::from_spec(spec), N, precision);
  auto mu = exact_circle_moments(spec, N);
  if (!mu) fail(ErrorCode::invalid_argument, "weight '" + spec.text() + "' has no rational moments");
  ExactVerblunsky ex = verblunsky_levinson_exact(*mu, N);
  VerblunskySeq out;
  for (const auto& a : ex.alpha) out.alpha.push_back(cplx(static_cast<double>(a), 0.0));
  for (const auto& a : ex.alpha) out.rho.push_back(std::sqrt(static_cast<double>(1 - a * a)));
  for (const auto& k2 : ex.kappa2) out.kappa.push_back(std::sqrt(static_cast<double>(k2)));
  out.breakdown = ex.breakdown;
  return out;
}

namespace {

template <class Real>
LdlResult<Real> toeplitz_ldl(const CircleMoments<Real>& moments, std::size_t n) {
  using C = complex_t<Real>;
  if (moments.order() < n) fail(ErrorCode::insufficient_moments, "Toeplitz determinant needs mu_0..mu_n");
  DenseMatrix<C> t(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t k = 0; k <= n; ++k) t(j, k) = moments.at(static_cast<long>(j) - static_cast<long>(k));
  auto ldl = ldl_hermitian<Real>(t);
  if (ldl.failed_at) {
    fail(ErrorCode::precision_exhausted,
         "Toeplitz matrix not positive definite at order " + std::to_string(*ldl.failed_at));
  }
  return ldl;
}

}  // namespace

template <class Real>
Real toeplitz_det(const CircleMoments<Real>& moments, std::size_t n) {
  Real d(1);
  for (const auto& p : toeplitz_ldl(moments, n).pivots) d *= p;
  return d;
}

template <class Real>
Real toeplitz_logdet(const CircleMoments<Real>& moments, std::size_t n) {
  using std::log;
  Real s(0);
  for (const auto& p : toeplitz_ldl(moments, n).pivots) s += log(p);
  return s;
}

rational toeplitz_det_exact(const std::vector<rational>& mu, std::size_t n) {
  if (mu.size() < n + 1) fail(ErrorCode::insufficient_moments, "Toeplitz determinant needs mu_0..mu_n");
  DenseMatrix<rational> t(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t k = 0; k <= n; ++k) t(j, k) = mu[j > k ? j - k : k - j];
  return determinant(std::move(t));
}

std::pair<std::vector<cplx>, std::vector<cplx>> szego_monic_coefficients(const VerblunskySeq& v,
                                                                         std::size_t n) {
  if (n > v.size()) fail(ErrorCode::invalid_argument, "degree beyond stored data");
  std::vector<cplx> phi{1.0}, star{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> zphi = poly::shift(phi, 1);
    std::vector<cplx> next = poly::add(zphi, star, -std::conj(v.alpha[k]));
    star = poly::add(star, zphi, -v.alpha[k]);
    phi = std::move(next);
  }
  star.resize(n + 1);
  return {phi, star};
}

std::vector<std::vector<cplx>> CMVMatrix::bands() const {
  std::vector<std::vector<cplx>> out;
  const auto N = C.rows();
  for (int off = -2; off <= 2; ++off) {
    std::vector<cplx> d;
    for (Eigen::Index i = 0; i < N; ++i) {
      const Eigen::Index j = i + off;
      if (j >= 0 && j < N) d.push_back(C(i, j));
    }
    out.push_back(std::move(d));
  }
  return out;
}

CMVMatrix cmv_build(const VerblunskySeq& v, std::size_t N) {
  if (N == 0) fail(ErrorCode::invalid_argument, "CMV section needs N >= 1");
  if (N > v.size()) fail(ErrorCode::invalid_argument, "CMV section of size N needs alpha_0..alpha_{N-1}");
  const auto K = static_cast<Eigen::Index>(N + 1);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(K, K), M = Eigen::MatrixXcd::Zero(K, K);
  auto put = [&](Eigen::MatrixXcd& X, Eigen::Index at, std::size_t j) {
    const cplx a = v.alpha[j];
    const double r = v.rho[j];
    X(at, at) = std::conj(a);
    if (at + 1 < K) {
      X(at, at + 1) = r;
      X(at + 1, at) = r;
      X(at + 1, at + 1) = -a;
    }
  };
  M(0, 0) = 1.0;
  for (std::size_t j = 0; j < N; ++j) {
    const auto at = static_cast<Eigen::Index>(j);
    if (j % 2 == 0) put(L, at, j);
    else put(M, at, j);
  }
  // Both factors are exact on the (N+1) x (N+1) block, so the product is
  // exact on the leading N x N block.
  Eigen::MatrixXcd full = L * M;
  CMVMatrix out;
  out.C = full.topLeftCorner(K - 1, K - 1);
  return out;
}

std::size_t cmv_moment_window(std::size_t N) { return (N + 1) / 2; }

cplx cmv_moment(const CMVMatrix& C, std::size_t k) {
  if (k > cmv_moment_window(C.size())) {
    fail(ErrorCode::truncation_window_exceeded,
         "moment order " + std::to_string(k) + " exceeds the exact window " +
             std::to_string(cmv_moment_window(C.size())) + " of a " + std::to_string(C.size()) +
             "x" + std::to_string(C.size()) + " section");
  }
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(C.C.rows());
  e(0) = 1.0;
  Eigen::VectorXcd x = e;
  for (std::size_t i = 0; i < k; ++i) x = C.C * x;
  return x(0);
}

template VerblunskySeq to_double(const BasicVerblunsky<double>&);
template VerblunskySeq to_double(const BasicVerblunsky<extended>&);
template BasicVerblunsky<double> verblunsky_levinson(const CircleMoments<double>&, std::size_t);
template BasicVerblunsky<extended> verblunsky_levinson(const CircleMoments<extended>&, std::size_t);
template double toeplitz_det(const CircleMoments<double>&, std::size_t);
template extended toeplitz_det(const CircleMoments<extended>&, std::size_t);
template wide toeplitz_det(const CircleMoments<wide>&, std::size_t);
template double toeplitz_logdet(const CircleMoments<double>&, std::size_t);
template extended toeplitz_logdet(const CircleMoments<extended>&, std::size_t);
template wide toeplitz_logdet(const CircleMoments<wide>&, std::size_t);

}  // namespace rhop
