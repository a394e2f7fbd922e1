#include <cmath>
#include <memory>

#include <Eigen/Dense>

#include "rhop/rhp.hpp"

namespace rhop {

namespace {

const char* kModule = "rhp";

FourierSeries omega_series(const Weight& w, std::size_t K) {
  const CircleMoments<double> mom = circle_moments<double>(w, K);
  FourierSeries s;
  s.kmin = -static_cast<int>(K);
  for (long k = -static_cast<long>(K); k <= static_cast<long>(K); ++k) s.c.push_back(mom.at(k));
  return s;
}

FourierSeries poly_series(const std::vector<cplx>& c) { return FourierSeries{0, c}; }

Mat2 circle_jump(const Weight& w, std::size_t n, double theta) {
  Mat2 v;
  v << 1.0, w(theta) * std::polar(1.0, -static_cast<double>(n) * theta), 0.0, 1.0;
  return v;
}

void check_off_circle(cplx z) {
  if (std::abs(std::abs(z) - 1.0) < 1e-12) {
    throw Error(ErrorCode::use_boundary_mode, kModule, "point lies on the unit circle");
  }
}

struct CircleData {
  std::size_t n = 0;
  FourierSeries phi, star;  // Phi_n, Phi_{n-1}^*
  FourierSeries h1, h2;     // Phi_n w s^{-n}, Phi_{n-1}^* w s^{-n}
  double k2 = 0.0;          // kappa_{n-1}^2

  Mat2 assemble(cplx p, cplx c1, cplx q, cplx c2) const {
    Mat2 Y;
    if (n == 0) Y << p, c1, 0.0, 1.0;
    else Y << p, c1, -k2 * q, -k2 * c2;
    return Y;
  }
};

}  // namespace

RHSolution assemble_Y(const Weight& w, std::size_t n, std::size_t modes) {
  if (w.contour() != Contour::circle) throw Error(ErrorCode::invalid_argument, kModule, "needs a circle weight");
  const std::size_t K = std::max(modes, 2 * n + 16);
  auto d = std::make_shared<CircleData>();
  d->n = n;
  const VerblunskySeq v = verblunsky_from_weight(w, n);
  if (v.breakdown) throw Error(ErrorCode::precision_exhausted, kModule, v.breakdown->reason);
  const FourierSeries om = omega_series(w, K);
  const FourierSeries shift = FourierSeries::monomial(-static_cast<int>(n));
  d->phi = poly_series(szego_monic_coefficients(v, n).first);
  d->h1 = d->phi * om * shift;
  double norm = 0.0;
  const double hn = 1.0 / (v.kappa[n] * v.kappa[n]);
  const double mu0 = om.coeff(0).real();
  // Y_12 z^n -> 0 needs the modes -n..-1 of h1 to vanish (orthogonality).
  for (int k = -static_cast<int>(n); k < 0; ++k) norm = std::max(norm, std::abs(d->h1.coeff(k)) / std::sqrt(mu0 * hn));
  if (n > 0) {
    d->k2 = v.kappa[n - 1] * v.kappa[n - 1];
    d->star = poly_series(szego_monic_coefficients(v, n - 1).second);
    d->h2 = d->star * om * shift;
    const double hp = 1.0 / d->k2;
    for (int k = -static_cast<int>(n) + 1; k < 0; ++k) {
      norm = std::max(norm, std::abs(d->h2.coeff(k)) / std::sqrt(mu0 * hp));
    }
    norm = std::max(norm, std::abs(d->k2 * d->h2.coeff(-static_cast<int>(n)) - 1.0));
  }

  RHSolution s;
  s.contour = Contour::circle;
  s.n = n;
  s.normalization_residual = norm;
  s.eval = [d](cplx z) {
    check_off_circle(z);
    return d->assemble(d->phi(z), cauchy_circle(d->h1, z), d->n > 0 ? d->star(z) : cplx{},
                       d->n > 0 ? cauchy_circle(d->h2, z) : cplx{});
  };
  s.boundary = [d](double theta, int side) {
    const cplx z = std::polar(1.0, theta);
    return d->assemble(d->phi(z), cauchy_boundary(d->h1, side)(z), d->n > 0 ? d->star(z) : cplx{},
                       d->n > 0 ? cauchy_boundary(d->h2, side)(z) : cplx{});
  };
  s.jump = [w, n](double theta) { return circle_jump(w, n, theta); };
  s.residue_or_value = s.eval(0.0);
  s.alpha = -std::conj(s.residue_or_value(0, 0));
  s.kappa2 = -s.residue_or_value(1, 0).real();
  return s;
}

// With m = Y inside and m = Y z^{-n sigma_3} outside, m -> I at infinity and
// m_+ = m_- J on the circle, J = [[z^n, w], [0, z^{-n}]].  The trivial
// factorization w_+ = J - I, w_- = 0 turns (1 - C_w) mu = I into
//   mu = I + sum_{k<0} mu_k z^k,   P_{<0}(mu J) = 0,
// solved row by row over modes -M..-1.  Column 1 of mu J contributes the
// modes -M+n..-1 and column 2 the modes -M-n..-1, a square 2M system.
// Then m = I + C(mu (J - I)).
RHSolution solve_rhp_circle(const Weight& w, std::size_t n, std::size_t M) {
  if (w.contour() != Contour::circle) throw Error(ErrorCode::invalid_argument, kModule, "needs a circle weight");
  if (M <= n) throw Error(ErrorCode::invalid_argument, kModule, "mode cutoff M must exceed n");
  const int Mi = static_cast<int>(M), ni = static_cast<int>(n);
  const FourierSeries om = omega_series(w, M + n + 16);
  const Eigen::Index dim = 2 * Mi;
  auto idx1 = [Mi](int j) { return static_cast<Eigen::Index>(j + Mi); };
  auto idx2 = [Mi](int j) { return static_cast<Eigen::Index>(j + 2 * Mi); };

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, 2);
  Eigen::Index row = 0;
  // Column 1: mode k of mu_1 z^n is mu_1[k - n].
  for (int k = -Mi + ni; k <= -1; ++k, ++row) A(row, idx1(k - ni)) = 1.0;
  // Column 2: mode k of mu_1 w + mu_2 z^{-n}.
  for (int k = -Mi - ni; k <= -1; ++k, ++row) {
    for (int j = -Mi; j <= -1; ++j) A(row, idx1(j)) += om.coeff(k - j);
    if (k + ni <= -1 && k + ni >= -Mi) A(row, idx2(k + ni)) += 1.0;
    // Known mode-0 terms for rows r = 0, 1: mu_r1[0] = delta_r0, mu_r2[0] = delta_r1.
    rhs(row, 0) -= om.coeff(k);
    if (k + ni == 0) rhs(row, 1) -= 1.0;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  // 1-norm condition estimate from the factorization.
  const double cond = 1.0 / lu.rcond();
  if (!std::isfinite(cond) || cond > 1e12) {
    throw Error(ErrorCode::ill_conditioned, kModule,
                "singular-integral system ill-conditioned (cond " + std::to_string(cond) +
                    "); increase M or precision");
  }
  const Eigen::MatrixXcd x = lu.solve(rhs);

  // mu W with W = J - I, row by row.
  auto d = std::make_shared<std::array<FourierSeries, 4>>();  // (mu W)_{r c}, index 2r + c
  FourierSeries W11 = FourierSeries::monomial(ni) - FourierSeries::monomial(0);
  FourierSeries W22 = FourierSeries::monomial(-ni) - FourierSeries::monomial(0);
  for (int r = 0; r < 2; ++r) {
    FourierSeries mu1{-Mi, {}}, mu2{-Mi, {}};
    for (int j = -Mi; j <= -1; ++j) {
      mu1.c.push_back(x(idx1(j), r));
      mu2.c.push_back(x(idx2(j), r));
    }
    mu1.c.push_back(r == 0 ? 1.0 : 0.0);
    mu2.c.push_back(r == 1 ? 1.0 : 0.0);
    (*d)[2 * r] = ni == 0 ? FourierSeries{} : mu1 * W11;
    (*d)[2 * r + 1] = ni == 0 ? mu1 * om : mu1 * om + mu2 * W22;
  }
  auto inside = [d](cplx z) {
    Mat2 m = Mat2::Identity();
    for (int e = 0; e < 4; ++e) {
      const auto& f = (*d)[e];
      if (!f.c.empty()) m(e / 2, e % 2) += f.restricted(0, std::max(f.kmax(), 0))(z);
    }
    return m;
  };
  auto outside = [d, ni](cplx z) {
    Mat2 m = Mat2::Identity();
    for (int e = 0; e < 4; ++e) {
      const auto& f = (*d)[e];
      if (!f.c.empty()) m(e / 2, e % 2) -= f.restricted(f.kmin, -1)(z);
    }
    Mat2 zs = Mat2::Zero();
    zs(0, 0) = std::pow(z, ni);
    zs(1, 1) = std::pow(z, -ni);
    return Mat2(m * zs);
  };

  RHSolution s;
  s.contour = Contour::circle;
  s.n = n;
  s.condition = cond;
  s.normalization_residual = 0.0;
  s.eval = [inside, outside](cplx z) {
    check_off_circle(z);
    return std::abs(z) < 1.0 ? inside(z) : outside(z);
  };
  s.boundary = [inside, outside](double theta, int side) {
    const cplx z = std::polar(1.0, theta);
    return side > 0 ? inside(z) : outside(z);
  };
  s.jump = [w, n](double theta) { return circle_jump(w, n, theta); };
  s.residue_or_value = inside(0.0);
  s.alpha = -std::conj(s.residue_or_value(0, 0));
  s.kappa2 = -s.residue_or_value(1, 0).real();
  return s;
}

TransferCircleReport transfer_identity_circle(const Weight& w, std::size_t n,
                                              const std::vector<cplx>& points) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, kModule, "transfer identity needs n >= 1");
  RHSolution a = assemble_Y(w, n);
  RHSolution b = assemble_Y(w, n + 1);
  const VerblunskySeq v = verblunsky_from_weight(w, n + 1);
  const double k2 = v.kappa[n] * v.kappa[n];
  TransferCircleReport r;
  r.a_hat = std::conj(v.alpha[n]) * v.alpha[n - 1];
  r.b_hat = std::conj(v.alpha[n]) / k2;
  r.c_hat = k2 * v.alpha[n - 1];
  for (const cplx& z : points) {
    Mat2 T;
    T << z + r.a_hat, r.b_hat, r.c_hat, 1.0;
    Mat2 D = Mat2::Identity();
    D(1, 1) = z;
    const Mat2 Ya = a.eval(z);
    const Mat2 lhs = b.eval(z) * D;
    r.residual = std::max(r.residual, max_entry_diff(lhs, T * Ya) / (1.0 + lhs.cwiseAbs().maxCoeff()));
    r.det_residual = std::max(r.det_residual, std::abs(Ya.determinant() - 1.0));
  }
  return r;
}

}  // namespace rhop
