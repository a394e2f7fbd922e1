#include "rhop/toda.hpp"

#include <cmath>

namespace rhop {

namespace {

struct State {
  std::vector<double> a, b;
};

State rhs(const State& s) {
  const std::size_t N = s.a.size();
  State d{std::vector<double>(N, 0.0), std::vector<double>(s.b.size(), 0.0)};
  for (std::size_t n = 0; n < N; ++n) {
    const double up = n < s.b.size() ? s.b[n] * s.b[n] : 0.0;
    const double down = n > 0 ? s.b[n - 1] * s.b[n - 1] : 0.0;
    d.a[n] = 2.0 * (up - down);
  }
  for (std::size_t n = 0; n < s.b.size(); ++n) d.b[n] = s.b[n] * (s.a[n + 1] - s.a[n]);
  return d;
}

State axpy(const State& x, double h, const State& d) {
  State r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += h * d.a[i];
  for (std::size_t i = 0; i < r.b.size(); ++i) r.b[i] += h * d.b[i];
  return r;
}

double energy(const State& s) {
  double e = 0.0;
  for (double a : s.a) e += a * a;
  for (double b : s.b) e += 2.0 * b * b;
  return e;
}

}  // namespace

JacobiMatrix toda_flow_spectral(const JacobiMatrix& L0, double t) {
  validate(L0);
  if (t == 0.0) return L0;
  DiscreteMeasure mu = spectral_measure(L0);
  std::vector<double> lw;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i) lw.push_back(std::log(mu.weights[i]) + 2.0 * mu.atoms[i] * t);
  return jacobi_from_log_weights(mu.atoms, lw);
}

JacobiMatrix toda_flow_ode(const JacobiMatrix& L0, double t, const TodaOdeOptions& opts) {
  validate(L0);
  if (!(opts.step > 0.0)) throw Error(ErrorCode::invalid_argument, "opline", "step must be positive");
  State s{L0.diag, L0.offdiag};
  if (t == 0.0) return L0;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(t) / opts.step));
  const double h = t / static_cast<double>(steps);
  const double e0 = energy(s);
  for (std::size_t i = 0; i < steps; ++i) {
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, h / 2, k1));
    const State k3 = rhs(axpy(s, h / 2, k2));
    const State k4 = rhs(axpy(s, h, k3));
    for (std::size_t j = 0; j < s.a.size(); ++j) s.a[j] += h / 6 * (k1.a[j] + 2 * k2.a[j] + 2 * k3.a[j] + k4.a[j]);
    for (std::size_t j = 0; j < s.b.size(); ++j) s.b[j] += h / 6 * (k1.b[j] + 2 * k2.b[j] + 2 * k3.b[j] + k4.b[j]);
    if (std::abs(energy(s) - e0) > opts.drift_tolerance * (1.0 + e0)) {
      throw Error(ErrorCode::step_rejected, "opline",
                  "trace(L^2) drift exceeds tolerance; reduce the step");
    }
  }
  return {s.a, s.b};
}

double toda_commutation_residual(const JacobiMatrix& L0, std::size_t n, double t, double h) {
  validate(L0);
  if (n + 2 > L0.size()) {
    throw Error(ErrorCode::invalid_argument, "opline", "need n + 2 <= N for the commutation check");
  }
  auto monic = [&](double tt) {
    JacobiMatrix L = toda_flow_spectral(L0, tt);
    RecurrenceLine rec{L.diag, L.offdiag, {}, {}};
    return std::make_pair(monic_coefficients(rec, n + 1), L);
  };
  // n first: P_{n+1}(.; t) at neighbouring times, then d/dt.
  const double stencil[4] = {-2.0, -1.0, 1.0, 2.0};
  const double coef[4] = {1.0, -8.0, 8.0, -1.0};
  std::vector<double> dP(n + 2, 0.0);
  for (int s = 0; s < 4; ++s) {
    auto P = monic(t + stencil[s] * h).first[n + 1];
    for (std::size_t i = 0; i < P.size(); ++i) dP[i] += coef[s] * P[i] / (12.0 * h);
  }
  // t first: flowed coefficients, then -2 b_n^2 P_n.
  auto [P, L] = monic(t);
  const double b2 = L.offdiag[n] * L.offdiag[n];
  double res = 0.0;
  for (std::size_t i = 0; i < dP.size(); ++i) {
    const double rhs_i = i < P[n].size() ? -2.0 * b2 * P[n][i] : 0.0;
    res = std::max(res, std::abs(dP[i] - rhs_i));
  }
  return res;
}

}  // namespace rhop
