#include <cmath>
#include <memory>

#include <Eigen/LU>

#include "rhop/rhp.hpp"

namespace rhop {

namespace {

const char* kModule = "rhp";
const cplx kTwoPiI(0.0, 2.0 * M_PI);

struct LineData {
  Weight w;
  std::size_t n = 0;
  RecurrenceLine rec;
  double k2_prev = 0.0;  // k_{n-1}^2
  LineDensity dn, dprev;
  Mat2 X1 = Mat2::Zero();
  double normalization = 0.0;

  cplx P(std::size_t deg, cplx z) const { return eval_monic(rec, deg, z)[deg]; }

  Mat2 assemble(cplx p11, cplx c1, cplx p21, cplx c2) const {
    Mat2 X;
    if (n == 0) {
      X << p11, c1, 0.0, 1.0;
    } else {
      X << p11, c1, -kTwoPiI * k2_prev * p21, -kTwoPiI * k2_prev * c2;
    }
    return X;
  }

  Mat2 eval(cplx z) const {
    const cplx c1 = cauchy_line(dn, z);
    const cplx c2 = n > 0 ? cauchy_line(dprev, z) : cplx{};
    return assemble(P(n, z), c1, n > 0 ? P(n - 1, z) : cplx{}, c2);
  }
};

std::shared_ptr<LineData> make_line_data(const Weight& w, std::size_t n) {
  if (w.contour() != Contour::line) throw Error(ErrorCode::invalid_argument, kModule, "needs a line weight");
  auto d = std::make_shared<LineData>();
  d->w = w;
  d->n = n;
  d->rec = recurrence_from_measure(w, n + 1);
  if (d->rec.breakdown) {
    throw Error(ErrorCode::precision_exhausted, kModule, "recurrence breakdown: " + d->rec.breakdown->reason);
  }
  if (n > 0) d->k2_prev = d->rec.k[n - 1] * d->rec.k[n - 1];
  const double L = w.truncation_halfwidth(n + 2, 1e-17);
  auto data = d.get();
  d->dn = {[data](double x) { return cplx(data->P(data->n, x) * data->w(x)); }, L};
  if (n > 0) d->dprev = {[data](double x) { return cplx(data->P(data->n - 1, x) * data->w(x)); }, L};

  // Moments of P_n w and P_{n-1} w against s^j give X_1 and the
  // normalization coefficients.
  const quad::Rule<double> r = line_rule<double>(w, 2 * n + 2);
  auto moment = [&](std::size_t deg, std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      acc += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(j)) * eval_monic(d->rec, deg, r.nodes[i])[deg];
    }
    return acc;
  };
  auto even_moment = [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], 2.0 * static_cast<double>(j));
    return acc;
  };
  const double hn = moment(n, n);
  Mat2 X1 = Mat2::Zero();
  if (n > 0) X1(0, 0) = monic_coefficients(d->rec, n)[n][n - 1];
  X1(0, 1) = -hn / kTwoPiI;
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(moment(n, j)) / std::sqrt(even_moment(j) * hn));
  if (n > 0) {
    const double hp = moment(n - 1, n - 1);
    X1(1, 0) = -kTwoPiI * d->k2_prev;
    X1(1, 1) = d->k2_prev * moment(n - 1, n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      norm = std::max(norm, std::abs(moment(n - 1, j)) / std::sqrt(even_moment(j) * hp));
    }
    norm = std::max(norm, std::abs(d->k2_prev * hp - 1.0));
  }
  d->X1 = X1;
  d->normalization = norm;
  return d;
}

}  // namespace

RHSolution assemble_X(const Weight& w, std::size_t n) {
  auto d = make_line_data(w, n);
  RHSolution s;
  s.contour = Contour::line;
  s.n = n;
  s.residue_or_value = d->X1;
  s.kappa2 = n > 0 ? d->k2_prev : 0.0;
  s.normalization_residual = d->normalization;
  s.eval = [d](cplx z) { return d->eval(z); };
  s.jump = [d](double x) {
    Mat2 v;
    v << 1.0, d->w(x), 0.0, 1.0;
    return v;
  };
  s.boundary = [d](double x, int side) {
    // Vertical limit x +/- i eps, Richardson extrapolation in eps -> 0.
    constexpr int levels = 6;
    Mat2 T[levels];
    double eps = 0.02;
    for (int j = 0; j < levels; ++j, eps /= 2.0) {
      T[j] = d->eval(cplx(x, side > 0 ? eps : -eps));
    }
    for (int k = 1; k < levels; ++k) {
      const double f = std::ldexp(1.0, k) - 1.0;
      for (int j = levels - 1; j >= k; --j) T[j] = T[j] + (T[j] - T[j - 1]) / f;
    }
    return T[levels - 1];
  };
  return s;
}

Mat2 assemble_X_boundary_plemelj(const Weight& w, std::size_t n, double x, int side) {
  auto d = make_line_data(w, n);
  const cplx c1 = cauchy_line_boundary(d->dn, x, side);
  const cplx c2 = n > 0 ? cauchy_line_boundary(d->dprev, x, side) : cplx{};
  return d->assemble(d->P(n, x), c1, n > 0 ? d->P(n - 1, x) : cplx{}, c2);
}

LineExtraction extract_line_coefficients(const Weight& w, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, kModule, "extraction needs n >= 1");
  const Mat2 A = make_line_data(w, n)->X1;
  const Mat2 B = make_line_data(w, n + 1)->X1;
  LineExtraction e;
  e.a = (A(0, 0) - B(0, 0)).real();
  e.b2 = (A(0, 1) * A(1, 0)).real();
  e.k2 = (-A(1, 0) / kTwoPiI).real();
  e.b2_mixed = (A(0, 1) * B(1, 0)).real();
  return e;
}

double transfer_identity_line(const Weight& w, std::size_t n, const std::vector<cplx>& points) {
  auto a = make_line_data(w, n);
  auto b = make_line_data(w, n + 1);
  Mat2 E11 = Mat2::Zero();
  E11(0, 0) = 1.0;
  double res = 0.0;
  for (const cplx& z : points) {
    const Mat2 T = z * E11 + b->X1 * E11 - E11 * a->X1;
    const Mat2 lhs = b->eval(z);
    res = std::max(res, max_entry_diff(lhs, T * a->eval(z)) / (1.0 + lhs.cwiseAbs().maxCoeff()));
  }
  return res;
}

}  // namespace rhop
