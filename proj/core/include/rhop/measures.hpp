#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhop/error.hpp"
#include "rhop/precision.hpp"
#include "rhop/quadrature.hpp"

namespace rhop {

enum class Contour { line, circle };
enum class Normalization { probability, raw };

std::string_view to_string(Contour c);

namespace weights {
/// d theta / 2 pi on the circle.
struct Lebesgue {};
/// 1 + c cos(theta) on the circle, 0 < |c| <= 1.
struct OnePlusCos {
  double c = 1.0;
};
/// e^{s cos(theta)} on the circle.
struct ExpCos {
  double s = 1.0;
};
/// e^{-x^2} / sqrt(pi) on the line.
struct Gauss {};
/// e^{-(g x^4 + d x^2)} on the line.
struct Quartic {
  double g = 1.0;
  double d = 0.0;
};
/// 1 + c e^{-a x^2} on the line, c > -1, a > 0.  Not integrable by itself;
/// used as a perturbation factor multiplying a decaying weight.
struct Bump {
  double c = 0.5;
  double a = 1.0;
};
/// Tabulated strictly positive values.  Circle: uniform grid on [0, 2 pi).
/// Line: increasing abscissae, zero outside [grid.front(), grid.back()].
struct Sampled {
  std::vector<double> grid;
  std::vector<double> values;
  std::string source;
};
}  // namespace weights

using WeightForm = std::variant<weights::Lebesgue, weights::OnePlusCos, weights::ExpCos,
                                weights::Gauss, weights::Quartic, weights::Bump,
                                weights::Sampled>;

struct WeightSpec {
  Contour contour = Contour::circle;
  WeightForm form = weights::Lebesgue{};
  Normalization normalization = Normalization::raw;

  /// Canonical mini-language text (round-trips through parse_weight_spec).
  std::string text() const;
};

/// Parses the weight mini-language:
///   lebesgue | onepluscos[:c=<real>] | expcos:s=<real> | gauss | quartic:g=<real>,d=<real>
///   | bump:c=<real>,a=<real>
///   | sampled:<contour>:<path>   (contour = line | circle; CSV of grid,value)
/// Any builtin accepts an extra `norm=probability|raw` key.
WeightSpec parse_weight_spec(std::string_view text);

WeightSpec load_sampled_weight(Contour contour, const std::string& path);

/// An evaluable positive weight on the line or circle (argument x or theta).
/// Immutable and cheap to copy; the evaluators are shared.
class Weight {
 public:
  struct Evaluators {
    std::function<double(double)> f64;
    std::function<extended(const extended&)> f_ext;
    std::function<wide(const wide&)> f_wide;
  };

  Weight() = default;
  Weight(Contour contour, std::string label, Evaluators eval);

  static Weight from_spec(const WeightSpec& spec);
  static Weight constant(Contour contour, double value);

  Contour contour() const { return contour_; }
  const std::string& label() const { return label_; }

  double operator()(double x) const { return eval_->f64(x); }
  extended operator()(const extended& x) const;
  wide operator()(const wide& x) const;
  bool has_extended() const { return static_cast<bool>(eval_->f_ext); }
  bool has_wide() const { return static_cast<bool>(eval_->f_wide); }

  /// Line weights of the form e^{-a x^2} g(x) with g smooth and bounded
  /// report a > 0 and expose g; Gauss-Hermite rules are then used.
  double gaussian_exponent() const { return gauss_a_; }
  const Evaluators* gaussian_factor() const { return gauss_g_.get(); }
  bool gaussian_factor_is_constant() const { return gauss_g_constant_; }

  /// Line weights that vanish identically outside a finite interval.
  std::optional<std::pair<double, double>> compact_support() const { return support_; }

  Weight operator*(const Weight& other) const;
  Weight scaled(double c) const;
  /// The homotopy 1 - t + t w, positive for t in [0, 1] when w > 0.
  Weight homotopy(double t) const;
  /// w - 1 (not a weight; used for d/dt log w_t numerators).
  Weight minus_one() const;

  /// Symmetric truncation half-width L such that |x|^power w(x) |x| stays
  /// below `floor` times the peak of w for |x| >= L.
  double truncation_halfwidth(std::size_t power, double floor) const;

 private:
  Contour contour_ = Contour::circle;
  std::string label_;
  std::shared_ptr<const Evaluators> eval_;
  double gauss_a_ = 0.0;
  std::shared_ptr<const Evaluators> gauss_g_;
  bool gauss_g_constant_ = false;
  std::optional<std::pair<double, double>> support_;
  std::optional<double> const_value_;
};

template <class Real>
struct LineMoments {
  std::vector<Real> m;  ///< m_j = int x^j w(x) dx, j = 0..order
  std::size_t order() const { return m.empty() ? 0 : m.size() - 1; }
};

/// Trigonometric moments mu_k = int e^{-ik theta} w(theta) d theta / 2 pi for
/// k >= 0; mu_{-k} = conj(mu_k).
template <class Real>
struct CircleMoments {
  std::vector<complex_t<Real>> mu;
  std::size_t order() const { return mu.empty() ? 0 : mu.size() - 1; }
  complex_t<Real> at(long k) const {
    if (k >= 0) return mu[static_cast<std::size_t>(k)];
    return conjugate(mu[static_cast<std::size_t>(-k)]);
  }
};

struct LineMomentOptions {
  double tolerance = 1e-13;       ///< relative, for the panel-doubling check
  bool check_definiteness = true; ///< Hankel positive-definiteness
};

/// Discretization of w(x) dx by a positive rule (Gauss-Hermite for
/// Gaussian-type weights, composite Gauss-Legendre otherwise) exact or
/// converged for polynomial integrands up to degree `max_power`.
template <class Real>
quad::Rule<Real> line_rule(const Weight& w, std::size_t max_power, std::size_t min_nodes = 0);

template <class Real>
LineMoments<Real> line_moments(const Weight& w, std::size_t order,
                               const LineMomentOptions& opts = {});

/// Exact rational moments, available for the Gaussian builtin only.
std::optional<LineMoments<rational>> exact_line_moments(const WeightSpec& spec,
                                                        std::size_t order);

/// Grid used for circle moments when none is requested: smallest power of
/// two >= max(256, 4(order+1)) that passes the resolution check.
template <class Real>
CircleMoments<Real> circle_moments(const Weight& w, std::size_t order, std::size_t grid = 0);

/// Exact rational (real, symmetric) moments for lebesgue / onepluscos.
std::optional<std::vector<rational>> exact_circle_moments(const WeightSpec& spec,
                                                          std::size_t order);

/// Uniform circle grid sample of w at theta_j = 2 pi j / N.
std::vector<double> circle_samples(const Weight& w, std::size_t grid);

/// Caratheodory function F(z) = 1 + 2 sum_{k>=1} mu_k z^k of the probability
/// measure proportional to the moments (raw moments are divided by mu_0).
cplx caratheodory(const CircleMoments<double>& moments, cplx z, double tolerance = 1e-12);

/// Schur function f(z) = (F(z) - 1) / (z (F(z) + 1)); f(0) = mu_1 / mu_0.
cplx schur_function(const CircleMoments<double>& moments, cplx z, double tolerance = 1e-12);

extern template quad::Rule<double> line_rule<double>(const Weight&, std::size_t, std::size_t);
extern template quad::Rule<extended> line_rule<extended>(const Weight&, std::size_t, std::size_t);
extern template LineMoments<double> line_moments<double>(const Weight&, std::size_t,
                                                         const LineMomentOptions&);
extern template LineMoments<extended> line_moments<extended>(const Weight&, std::size_t,
                                                             const LineMomentOptions&);
extern template CircleMoments<double> circle_moments<double>(const Weight&, std::size_t,
                                                             std::size_t);
extern template CircleMoments<extended> circle_moments<extended>(const Weight&, std::size_t,
                                                                 std::size_t);
extern template CircleMoments<wide> circle_moments<wide>(const Weight&, std::size_t, std::size_t);

}  // namespace rhop
