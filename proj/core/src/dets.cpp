#include "rhop/dets.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"
#include "rhop/polynomial.hpp"
#include "rhop/quadrature.hpp"

namespace rhop {

namespace {

const char* kModule = "dets";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

// Wronskian of the first column of Y^{(n+1)}: Phi_{n+1} and Phi_n^*.
struct CircleWronskian {
  std::vector<cplx> phi, dphi, star, dstar;
  double k2 = 0.0;
  std::size_t n = 0;

  CircleWronskian(const VerblunskySeq& v, std::size_t n_) : n(n_) {
    phi = szego_monic_coefficients(v, n + 1).first;
    star = szego_monic_coefficients(v, n).second;
    dphi = poly::derivative(phi);
    dstar = poly::derivative(star);
    k2 = v.kappa[n] * v.kappa[n];
  }

  // Without the weight factor.
  cplx operator()(double theta) const {
    const cplx z = std::polar(1.0, theta);
    const cplx wr = poly::eval(dphi, z) * poly::eval(star, z) - poly::eval(phi, z) * poly::eval(dstar, z);
    return k2 * wr * std::polar(1.0, -static_cast<double>(n) * theta);
  }
};

// Same for X^{(n+1)}: P_{n+1} and P_n.
struct LineWronskian {
  std::vector<double> p1, dp1, p0, dp0;
  double k2 = 0.0;

  LineWronskian(const RecurrenceLine& rec, std::size_t n) {
    const auto c = monic_coefficients(rec, n + 1);
    p1 = c[n + 1];
    p0 = c[n];
    dp1 = poly::derivative(p1);
    dp0 = poly::derivative(p0);
    k2 = rec.k[n] * rec.k[n];
  }

  double operator()(double x) const {
    return k2 * (poly::eval(dp1, x) * poly::eval(p0, x) - poly::eval(p1, x) * poly::eval(dp0, x));
  }
};

RecurrenceLine line_recurrence(const Weight& w, std::size_t n) {
  RecurrenceLine rec = recurrence_from_measure(w, n + 2);
  if (rec.breakdown) fail(ErrorCode::precision_exhausted, "recurrence breakdown: " + rec.breakdown->reason);
  return rec;
}

VerblunskySeq circle_verblunsky(const Weight& w, std::size_t n) {
  VerblunskySeq v = verblunsky_from_weight(w, n + 1);
  if (v.breakdown) fail(ErrorCode::precision_exhausted, "Verblunsky breakdown: " + v.breakdown->reason);
  return v;
}

std::vector<double> uniform_angles(std::size_t grid) {
  std::vector<double> t(grid);
  for (std::size_t j = 0; j < grid; ++j) t[j] = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid);
  return t;
}

}  // namespace

OnePointFunction one_point_fn(const Weight& w, std::size_t n, std::size_t grid) {
  if (grid < 8) fail(ErrorCode::invalid_argument, "grid must have at least 8 points");
  OnePointFunction out;
  out.contour = w.contour();
  out.n = n;
  double scale = 0.0;
  if (w.contour() == Contour::circle) {
    const VerblunskySeq v = circle_verblunsky(w, n);
    const CircleWronskian R(v, n);
    out.points = uniform_angles(grid);
    double imag = 0.0;
    for (double theta : out.points) {
      const double wt = w(theta);
      const cplx r = R(theta) * wt;
      double cd = 0.0;
      for (std::size_t j = 0; j <= n; ++j) cd += std::norm(szego_eval(v, j, std::polar(1.0, theta)).first);
      out.values.push_back(r.real());
      out.cd_sum.push_back(cd * wt);
      imag = std::max(imag, std::abs(r.imag()));
    }
    for (double c : out.cd_sum) scale = std::max(scale, c);
    out.imag_residual = imag / scale;
    // Trapezoid on the full grid; spectrally accurate for smooth weights.
    // A separate finer grid decouples the check from the sample points.
    const std::size_t fine = std::max<std::size_t>(4 * grid, 1024);
    double acc = 0.0;
    for (double theta : uniform_angles(fine)) acc += R(theta).real() * w(theta);
    out.normalization = acc / static_cast<double>(fine);
  } else {
    const RecurrenceLine rec = line_recurrence(w, n);
    const LineWronskian R(rec, n);
    const double L = w.truncation_halfwidth(2 * n + 2, 1e-16);
    for (std::size_t i = 0; i < grid; ++i) {
      const double x = -L + 2.0 * L * static_cast<double>(i) / static_cast<double>(grid - 1);
      const double wx = w(x);
      double cd = 0.0;
      for (double p : eval_opl(rec, n, x)) cd += p * p;
      out.points.push_back(x);
      out.values.push_back(R(x) * wx);
      out.cd_sum.push_back(cd * wx);
    }
    for (double c : out.cd_sum) scale = std::max(scale, c);
    const quad::Rule<double> rule = line_rule<double>(w, 2 * n + 2);
    out.normalization = rule.integrate([&R](double x) { return R(x); });
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.cd_residual = std::max(out.cd_residual, std::abs(out.values[i] - out.cd_sum[i]));
  }
  out.cd_residual /= scale;
  out.normalization_error = std::abs(out.normalization - static_cast<double>(n + 1));
  return out;
}

double relative_logdet(const RelDetJob& job) {
  if (job.omega1.contour() != job.contour || job.omega2.contour() != job.contour) {
    fail(ErrorCode::invalid_argument, "weights must live on the job contour");
  }
  if (job.t_nodes == 0) fail(ErrorCode::invalid_argument, "need at least one t-node");
  const quad::Rule<double> tr = quad::gauss_legendre<double>(job.t_nodes, 0.0, 1.0);
  const Weight w1m = job.omega1.minus_one();
  double total = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Weight wt = job.omega1.homotopy(tr.nodes[i]);
    const Weight full = wt * job.omega2;
    double inner = 0.0;
    try {
      if (job.contour == Contour::circle) {
        const CircleWronskian R(circle_verblunsky(full, job.n), job.n);
        double acc = 0.0;
        for (double theta : uniform_angles(job.grid)) acc += R(theta).real() * job.omega2(theta) * w1m(theta);
        inner = acc / static_cast<double>(job.grid);
      } else {
        const LineWronskian R(line_recurrence(full, job.n), job.n);
        const quad::Rule<double> rule = line_rule<double>(full, 2 * job.n + 2, 160);
        inner = rule.integrate([&](double x) { return R(x) * w1m(x) / wt(x); });
      }
    } catch (const Error& e) {
      fail(e.code(), "t-node " + std::to_string(i) + " (t = " + std::to_string(tr.nodes[i]) + "): " + e.what());
    }
    total += tr.weights[i] * inner;
  }
  return total;
}

DetReport relative_logdet_report(const RelDetJob& job) {
  DetReport r;
  r.n = job.n;
  r.nodes = job.t_nodes;
  r.lhs = relative_logdet(job);
  const Weight prod = job.omega1 * job.omega2;
  if (job.contour == Contour::circle) {
    const extended a = toeplitz_logdet<extended>(circle_moments<extended>(prod, job.n), job.n);
    const extended b = toeplitz_logdet<extended>(circle_moments<extended>(job.omega2, job.n), job.n);
    r.rhs = to_double(a - b);
  } else {
    using std::log;
    const extended a = hankel_det(prod, job.n, Precision::extended).value;
    const extended b = hankel_det(job.omega2, job.n, Precision::extended).value;
    r.rhs = to_double(extended(log(a / b)));
  }
  r.abs_err = std::abs(r.lhs - r.rhs);
  r.rel_err = r.abs_err / std::max(std::abs(r.rhs), 1e-300);
  return r;
}

double szego_limit_prediction(const std::vector<cplx>& Vhat, std::size_t n) {
  if (Vhat.empty()) return 0.0;
  double acc = -static_cast<double>(n + 1) * Vhat[0].real();
  for (std::size_t k = 1; k < Vhat.size(); ++k) acc += static_cast<double>(k) * std::norm(Vhat[k]);
  return acc;
}

SzegoTable szego_table(double s, std::size_t n_min, std::size_t n_max) {
  if (n_max < n_min) fail(ErrorCode::invalid_argument, "empty n range");
  WeightSpec spec;
  spec.contour = Contour::circle;
  spec.form = weights::ExpCos{s};
  const Weight w = Weight::from_spec(spec);
  const CircleMoments<wide> mom = circle_moments<wide>(w, n_max);
  SzegoTable t;
  t.s = s;
  t.prediction = szego_limit_prediction({0.0, -s / 2.0}, n_max);
  const wide limit = wide(s) * wide(s) / 4;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const wide ld = toeplitz_logdet<wide>(mom, n);
    using std::abs;
    t.rows.push_back({n, to_double(ld), to_double(wide(abs(ld - limit)))});
  }
  t.monotone = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (t.rows[i].n > t.n_monotone_from && !(t.rows[i].abs_err < t.rows[i - 1].abs_err)) t.monotone = false;
  }
  return t;
}

HankelLimitTable hankel_strong_limit_check(const Weight& omega1, std::size_t n_min, std::size_t n_max) {
  if (omega1.contour() != Contour::line) fail(ErrorCode::invalid_argument, "needs a line weight");
  if (n_max < n_min) fail(ErrorCode::invalid_argument, "empty n range");
  HankelLimitTable t;
  auto logw = [&omega1](double x) { return std::log(omega1(x)); };

  // Support of log w1 to 1e-18.
  double L = 2.0;
  while (L < 200.0 && (std::abs(logw(L)) > 1e-18 || std::abs(logw(-L)) > 1e-18)) L += 0.5;
  if (L >= 200.0) fail(ErrorCode::insufficient_decay, "log w1 does not tend to 0");
  const auto xr = quad::composite_gauss_legendre<double>(-L, L, static_cast<std::size_t>(4 * L), 20);
  std::vector<double> lw(xr.size());
  for (std::size_t i = 0; i < xr.size(); ++i) lw[i] = logw(xr.nodes[i]);
  t.log_integral = 0.0;
  for (std::size_t i = 0; i < xr.size(); ++i) t.log_integral += xr.weights[i] * lw[i];

  auto fhat2 = [&](double k) {
    cplx acc{};
    for (std::size_t i = 0; i < xr.size(); ++i) acc += xr.weights[i] * lw[i] * std::polar(1.0, -k * xr.nodes[i]);
    return std::norm(acc) / (2.0 * M_PI);
  };
  double K = 4.0;
  while (K < 400.0 && K * (fhat2(K) + fhat2(-K)) > 1e-18) K *= 1.5;
  const auto kr = quad::composite_gauss_legendre<double>(0.0, K, static_cast<std::size_t>(std::ceil(2 * K)), 20);
  double acc = 0.0;
  for (std::size_t i = 0; i < kr.size(); ++i) {
    const double k = kr.nodes[i];
    acc += kr.weights[i] * k * (fhat2(k) + fhat2(-k));
  }
  t.fhat_term = acc / (4.0 * M_PI);

  WeightSpec gs;
  gs.contour = Contour::line;
  gs.form = weights::Gauss{};
  gs.normalization = Normalization::probability;
  const Weight gauss = Weight::from_spec(gs);
  const LineMoments<extended> m1 = line_moments<extended>(omega1 * gauss, 2 * n_max);
  const LineMoments<rational> m2 = *exact_line_moments(gs, 2 * n_max);
  std::vector<extended> m2e;
  for (const auto& q : m2.m) m2e.push_back(extended(q));
  for (std::size_t n = n_min; n <= n_max; ++n) {
    using std::log;
    HankelLimitRow r;
    r.n = n;
    r.lhs = to_double(extended(log(hankel_det<extended>(m1.m, n) / hankel_det<extended>(m2e, n))));
    r.rhs = std::sqrt(2.0 * static_cast<double>(n + 1)) / M_PI * t.log_integral + t.fhat_term;
    r.diff = r.lhs - r.rhs;
    t.rows.push_back(r);
  }
  t.decreasing = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (!(std::abs(t.rows[i].diff) < std::abs(t.rows[i - 1].diff))) t.decreasing = false;
  }
  return t;
}

DecayReport toeplitz_inverse_decay(const Weight& w, std::size_t n, std::size_t reference_size) {
  if (w.contour() != Contour::circle) fail(ErrorCode::invalid_argument, "needs a circle weight");
  const std::size_t R = std::max(4 * n + 4, reference_size);
  const CircleMoments<double> mom = circle_moments<double>(w, R);
  auto inverse = [&mom](std::size_t size) {
    Eigen::MatrixXcd T(size, size);
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t k = 0; k < size; ++k) T(j, k) = mom.at(static_cast<long>(j) - static_cast<long>(k));
    Eigen::LLT<Eigen::MatrixXcd> llt(T);
    if (llt.info() != Eigen::Success) {
      fail(ErrorCode::degenerate_measure, "Toeplitz section of size " + std::to_string(size) + " is not invertible");
    }
    return Eigen::MatrixXcd(llt.solve(Eigen::MatrixXcd::Identity(size, size)));
  };
  const Eigen::MatrixXcd Tn = inverse(n + 1);
  const Eigen::MatrixXcd Tr = inverse(R);

  DecayReport d;
  d.n = n;
  d.reference_size = R;
  std::vector<double> by_distance(n + 2, 0.0);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t k = 0; k <= n; ++k) {
      const double e = std::abs(Tn(j, k) - Tr(j, k));
      d.entries.push_back({j, k, e});
      if (e > d.max_err) {
        d.max_err = e;
        d.max_j = j;
        d.max_k = k;
      }
      double& slot = by_distance[n + 1 - std::max(j, k)];
      slot = std::max(slot, e);
      d.symmetry_residual = std::max(d.symmetry_residual, std::abs(e - std::abs(Tn(k, j) - Tr(k, j))));
    }
  }
  // Least squares on log e_d over d where e_d clears the roundoff floor.
  const double floor = 1e-13 * std::max(d.max_err, 1e-300);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t dist = 1; dist <= n + 1; ++dist) {
    const double e = by_distance[dist];
    if (!(e > floor) || !(e > 1e-300)) continue;
    const double x = static_cast<double>(dist), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++d.fit_points;
  }
  if (d.fit_points >= 2) {
    const double m = static_cast<double>(d.fit_points);
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    d.rate = -slope;
    d.intercept = (sy - slope * sx) / m;
  }
  return d;
}

}  // namespace rhop
