#include <cmath>

#include <Eigen/LU>

#include "rhop/quadrature.hpp"
#include "rhop/rhp.hpp"

namespace rhop {

namespace {

const char* kModule = "rhp";
const cplx kTwoPiI(0.0, 2.0 * M_PI);

}  // namespace

cplx cauchy_circle(const FourierSeries& h, cplx z) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) < 1e-12) {
    throw Error(ErrorCode::use_boundary_mode, kModule, "point lies on the unit circle");
  }
  if (r < 1.0) return h.restricted(0, h.kmax())(z);
  return -h.restricted(h.kmin, -1)(z);
}

FourierSeries cauchy_boundary(const FourierSeries& h, int side) {
  if (side > 0) return h.restricted(0, std::max(h.kmax(), 0));
  return h.restricted(h.kmin, -1).scaled(-1.0);
}

cplx cauchy_line(const LineDensity& h, cplx z) {
  const double x = z.real(), y = z.imag();
  if (std::abs(y) < 1e-9 * (1.0 + std::abs(x))) {
    throw Error(ErrorCode::use_boundary_mode, kModule, "point too close to the real line");
  }
  const double L = h.halfwidth;
  const quad::Rule<double> r = quad::graded_rule(-L, L, x, std::abs(y), 20);
  cplx acc{};
  for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * h.h(r.nodes[i]) / (r.nodes[i] - z);
  return acc / kTwoPiI;
}

cplx cauchy_line_boundary(const LineDensity& h, double x, int side) {
  const double L = h.halfwidth;
  if (std::abs(x) >= L) throw Error(ErrorCode::invalid_argument, kModule, "boundary point outside the density support");
  const cplx hx = h.h(x);
  // PV int_{-L}^{L} h(s)/(s-x) ds = int (h(s)-h(x))/(s-x) ds + h(x) log((L-x)/(L+x)).
  const quad::Rule<double> r = quad::graded_rule(-L, L, x, 0.25, 20);
  cplx pv = hx * std::log((L - x) / (L + x));
  for (std::size_t i = 0; i < r.size(); ++i) pv += r.weights[i] * (h.h(r.nodes[i]) - hx) / (r.nodes[i] - x);
  return (side > 0 ? 0.5 : -0.5) * hx + pv / kTwoPiI;
}

double max_entry_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }


std::vector<double> default_contour_points(Contour c, std::size_t count, double halfwidth) {
  std::vector<double> pts;
  for (std::size_t j = 0; j < count; ++j) {
    const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(count);
    pts.push_back(c == Contour::circle ? 2.0 * M_PI * u : halfwidth * (2.0 * u - 1.0));
  }
  return pts;
}

std::vector<cplx> default_test_points(Contour c, std::size_t count) {
  std::vector<cplx> pts;
  for (std::size_t j = 0; j < count; ++j) {
    const double u = (static_cast<double>(j / 2) + 0.3) / static_cast<double>((count + 1) / 2);
    if (c == Contour::circle) {
      pts.push_back(std::polar(j % 2 == 0 ? 0.5 : 2.0, 2.0 * M_PI * u));
    } else {
      pts.push_back(cplx(4.0 * u - 2.0, j % 2 == 0 ? 0.7 : -0.7));
    }
  }
  return pts;
}

double verify_jump(RHSolution& sol, const std::vector<double>& points) {
  double res = 0.0;
  for (double p : points) {
    const Mat2 plus = sol.boundary(p, +1);
    const Mat2 minus = sol.boundary(p, -1);
    const Mat2 v = sol.jump(p);
    const double scale = 1.0 + minus.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff();
    res = std::max(res, max_entry_diff(plus, minus * v) / scale);
  }
  sol.jump_residual = res;
  return res;
}

double verify_det(RHSolution& sol, const std::vector<cplx>& points) {
  double res = 0.0;
  for (const cplx& z : points) res = std::max(res, std::abs(sol.eval(z).determinant() - 1.0));
  sol.det_residual = res;
  return res;
}

}  // namespace rhop
