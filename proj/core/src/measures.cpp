#include "rhop/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rhop/fourier.hpp"
#include "rhop/linalg.hpp"

namespace rhop {

namespace {

const char* kModule = "measures";

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, kModule, msg);
}

template <class F>
Weight::Evaluators make_evaluators(F f) {
  return {[f](double x) { return static_cast<double>(f(x)); },
          [f](const extended& x) { return extended(f(x)); },
          [f](const wide& x) { return wide(f(x)); }};
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    fail(ErrorCode::config_error, "weight parameter '" + std::string(key) +
                                      "' is not a finite real: '" + std::string(text) + "'");
  }
  return v;
}

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      fail(ErrorCode::config_error, "malformed weight parameter '" + std::string(item) + "'");
    }
    out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void check_positive_samples(const std::vector<double>& values, const std::string& src) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::invalid_argument,
           "sampled weight '" + src + "' has a non-positive or non-finite value");
    }
  }
}

// Peak of a line weight, estimated on a coarse grid.
double line_peak(const Weight& w) {
  double peak = 0.0;
  for (int i = -400; i <= 400; ++i) peak = std::max(peak, w(0.05 * i));
  return peak;
}

}  // namespace

std::string_view to_string(Contour c) { return c == Contour::line ? "line" : "circle"; }

// ---------------------------------------------------------------------------
// Weight specs

std::string WeightSpec::text() const {
  std::string base = std::visit(
      [this](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, weights::Lebesgue>) return "lebesgue";
        if constexpr (std::is_same_v<T, weights::OnePlusCos>)
          return f.c == 1.0 ? std::string("onepluscos") : "onepluscos:c=" + format_real(f.c);
        if constexpr (std::is_same_v<T, weights::ExpCos>) return "expcos:s=" + format_real(f.s);
        if constexpr (std::is_same_v<T, weights::Gauss>) return "gauss";
        if constexpr (std::is_same_v<T, weights::Quartic>)
          return "quartic:g=" + format_real(f.g) + ",d=" + format_real(f.d);
        if constexpr (std::is_same_v<T, weights::Bump>)
          return "bump:c=" + format_real(f.c) + ",a=" + format_real(f.a);
        if constexpr (std::is_same_v<T, weights::Sampled>)
          return "sampled:" + std::string(to_string(contour)) + ":" + f.source;
        return "";
      },
      form);
  const bool natural_prob = std::holds_alternative<weights::Lebesgue>(form) ||
                            std::holds_alternative<weights::OnePlusCos>(form) ||
                            std::holds_alternative<weights::Gauss>(form);
  if (!natural_prob && normalization == Normalization::probability &&
      !std::holds_alternative<weights::Sampled>(form)) {
    base += (base.find(':') == std::string::npos ? ":" : ",");
    base += "norm=probability";
  }
  return base;
}

WeightSpec load_sampled_weight(Contour contour, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open sampled weight file '" + path + "'");
  weights::Sampled s;
  s.source = path;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorCode::io_error, "bad CSV row in '" + path + "'");
    std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    char* e1 = nullptr;
    char* e2 = nullptr;
    double x = std::strtod(a.c_str(), &e1);
    double v = std::strtod(b.c_str(), &e2);
    if (e1 == a.c_str() || e2 == b.c_str()) {
      if (first) {
        first = false;
        continue;  // header
      }
      fail(ErrorCode::io_error, "bad CSV row in '" + path + "'");
    }
    first = false;
    s.grid.push_back(x);
    s.values.push_back(v);
  }
  if (s.grid.size() < 4) fail(ErrorCode::io_error, "sampled weight '" + path + "' has < 4 rows");
  check_positive_samples(s.values, path);
  for (std::size_t i = 1; i < s.grid.size(); ++i) {
    if (!(s.grid[i] > s.grid[i - 1])) {
      fail(ErrorCode::invalid_argument, "sampled weight grid must be strictly increasing");
    }
  }
  if (contour == Contour::circle) {
    const double h = 2.0 * M_PI / static_cast<double>(s.grid.size());
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      if (std::abs(s.grid[i] - h * static_cast<double>(i)) > 1e-9) {
        fail(ErrorCode::invalid_argument,
             "circle samples must lie on the uniform grid 2*pi*j/N, j = 0..N-1");
      }
    }
  }
  WeightSpec spec;
  spec.contour = contour;
  spec.form = std::move(s);
  spec.normalization = Normalization::raw;
  return spec;
}

WeightSpec parse_weight_spec(std::string_view text) {
  auto colon = text.find(':');
  std::string name(text.substr(0, colon));
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (name == "sampled") {
    Contour c = Contour::line;
    std::string path(rest);
    if (rest.starts_with("line:")) {
      path = std::string(rest.substr(5));
    } else if (rest.starts_with("circle:")) {
      c = Contour::circle;
      path = std::string(rest.substr(7));
    } else {
      // Infer from the CSV header: a "theta" column means circle.
      std::ifstream in(path);
      std::string header;
      if (in && std::getline(in, header) && header.find("theta") != std::string::npos) {
        c = Contour::circle;
      }
    }
    if (path.empty()) fail(ErrorCode::config_error, "sampled weight needs a path");
    return load_sampled_weight(c, path);
  }

  auto params = parse_params(rest);
  WeightSpec spec;
  auto take = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    double v = parse_real(key, it->second);
    params.erase(it);
    return v;
  };
  std::optional<Normalization> norm;
  if (auto it = params.find("norm"); it != params.end()) {
    if (it->second == "probability") norm = Normalization::probability;
    else if (it->second == "raw") norm = Normalization::raw;
    else fail(ErrorCode::config_error, "norm must be 'probability' or 'raw'");
    params.erase(it);
  }

  if (name == "lebesgue") {
    spec = {Contour::circle, weights::Lebesgue{}, Normalization::probability};
  } else if (name == "onepluscos") {
    weights::OnePlusCos w{take("c", 1.0)};
    if (!(std::abs(w.c) <= 1.0) || w.c == 0.0) fail(ErrorCode::config_error, "onepluscos needs 0 < |c| <= 1");
    spec = {Contour::circle, w, Normalization::probability};
  } else if (name == "expcos") {
    spec = {Contour::circle, weights::ExpCos{take("s", 1.0)}, Normalization::raw};
  } else if (name == "gauss") {
    spec = {Contour::line, weights::Gauss{}, Normalization::probability};
  } else if (name == "quartic") {
    weights::Quartic q{take("g", 1.0), take("d", 0.0)};
    if (q.g < 0.0 || (q.g == 0.0 && q.d <= 0.0)) {
      fail(ErrorCode::insufficient_decay, "quartic weight needs g > 0, or g = 0 and d > 0");
    }
    spec = {Contour::line, q, Normalization::raw};
  } else if (name == "bump") {
    weights::Bump b{take("c", 0.5), take("a", 1.0)};
    if (!(b.c > -1.0) || !(b.a > 0.0)) fail(ErrorCode::config_error, "bump weight needs c > -1 and a > 0");
    spec = {Contour::line, b, Normalization::raw};
  } else {
    fail(ErrorCode::config_error, "unknown weight '" + name + "'");
  }
  if (!params.empty()) {
    fail(ErrorCode::config_error,
         "unknown parameter '" + params.begin()->first + "' for weight '" + name + "'");
  }
  if (norm) spec.normalization = *norm;
  return spec;
}

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(Contour contour, std::string label, Evaluators eval)
    : contour_(contour),
      label_(std::move(label)),
      eval_(std::make_shared<const Evaluators>(std::move(eval))) {}

extended Weight::operator()(const extended& x) const {
  if (!eval_->f_ext) {
    fail(ErrorCode::precision_exhausted, "weight '" + label_ + "' has no extended evaluator");
  }
  return eval_->f_ext(x);
}

wide Weight::operator()(const wide& x) const {
  if (!eval_->f_wide) {
    fail(ErrorCode::precision_exhausted, "weight '" + label_ + "' has no wide evaluator");
  }
  return eval_->f_wide(x);
}

Weight Weight::constant(Contour contour, double value) {
  Weight w(contour, format_real(value), make_evaluators([value](const auto& x) {
             using T = std::decay_t<decltype(x)>;
             return T(value);
           }));
  w.const_value_ = value;
  return w;
}

Weight Weight::from_spec(const WeightSpec& spec) {
  Weight w = std::visit(
      [&spec](const auto& f) -> Weight {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, weights::Lebesgue>) {
          return Weight::constant(Contour::circle, 1.0);
        } else if constexpr (std::is_same_v<F, weights::OnePlusCos>) {
          const double c = f.c;
          return Weight(Contour::circle, spec.text(), make_evaluators([c](const auto& t) {
                          using T = std::decay_t<decltype(t)>;
                          using std::cos;
                          return T(1 + T(c) * cos(t));
                        }));
        } else if constexpr (std::is_same_v<F, weights::ExpCos>) {
          const double s = f.s;
          return Weight(Contour::circle, spec.text(), make_evaluators([s](const auto& t) {
                          using T = std::decay_t<decltype(t)>;
                          using std::cos;
                          using std::exp;
                          return T(exp(T(s) * cos(t)));
                        }));
        } else if constexpr (std::is_same_v<F, weights::Gauss>) {
          Weight w(Contour::line, "gauss", make_evaluators([](const auto& x) {
                     using T = std::decay_t<decltype(x)>;
                     using std::exp;
                     using std::sqrt;
                     return T(exp(-x * x) / sqrt(pi<T>()));
                   }));
          w.gauss_a_ = 1.0;
          w.gauss_g_ = std::make_shared<const Evaluators>(make_evaluators([](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            using std::sqrt;
            return T(1 / sqrt(pi<T>()));
          }));
          w.gauss_g_constant_ = true;
          return w;
        } else if constexpr (std::is_same_v<F, weights::Quartic>) {
          const double g = f.g, d = f.d;
          Weight w(Contour::line, spec.text(), make_evaluators([g, d](const auto& x) {
                     using T = std::decay_t<decltype(x)>;
                     using std::exp;
                     T x2 = x * x;
                     return T(exp(-(T(g) * x2 * x2 + T(d) * x2)));
                   }));
          if (g == 0.0) {
            w.gauss_a_ = d;
            w.gauss_g_ = std::make_shared<const Evaluators>(
                make_evaluators([](const auto& x) { return std::decay_t<decltype(x)>(1); }));
            w.gauss_g_constant_ = true;
          }
          return w;
        } else if constexpr (std::is_same_v<F, weights::Bump>) {
          const double c = f.c, a = f.a;
          return Weight(Contour::line, spec.text(), make_evaluators([c, a](const auto& x) {
                          using T = std::decay_t<decltype(x)>;
                          using std::exp;
                          return T(1 + T(c) * exp(-T(a) * x * x));
                        }));
        } else {
          static_assert(std::is_same_v<F, weights::Sampled>);
          if (spec.contour == Contour::circle) {
            std::vector<cplx> samples(f.values.begin(), f.values.end());
            const int n = static_cast<int>(samples.size());
            const int half = (n - 1) / 2;
            auto series = std::make_shared<FourierSeries>(fourier_coefficients(samples, -half, half));
            Weight::Evaluators ev;
            ev.f64 = [series](double t) { return series->at_angle(t).real(); };
            return Weight(Contour::circle, spec.text(), std::move(ev));
          }
          auto grid = std::make_shared<std::vector<double>>(f.grid);
          auto vals = std::make_shared<std::vector<double>>(f.values);
          Weight::Evaluators ev;
          ev.f64 = [grid, vals](double x) {
            if (x < grid->front() || x > grid->back()) return 0.0;
            auto it = std::upper_bound(grid->begin(), grid->end(), x);
            if (it == grid->end()) return vals->back();
            auto i = static_cast<std::size_t>(it - grid->begin());
            const double x0 = (*grid)[i - 1], x1 = (*grid)[i];
            const double t = (x - x0) / (x1 - x0);
            return (1 - t) * (*vals)[i - 1] + t * (*vals)[i];
          };
          Weight w(Contour::line, spec.text(), std::move(ev));
          w.support_ = std::make_pair(f.grid.front(), f.grid.back());
          return w;
        }
      },
      spec.form);

  const bool natural_prob = std::holds_alternative<weights::Lebesgue>(spec.form) ||
                            std::holds_alternative<weights::OnePlusCos>(spec.form) ||
                            std::holds_alternative<weights::Gauss>(spec.form);
  if (spec.normalization == Normalization::probability && !natural_prob) {
    double mass = 0.0;
    if (w.contour() == Contour::circle) {
      if (w.has_extended()) {
        mass = to_double(real_part(circle_moments<extended>(w, 0).mu[0]));
      } else {
        mass = circle_moments<double>(w, 0).mu[0].real();
      }
    } else {
      LineMomentOptions o;
      o.check_definiteness = false;
      mass = w.has_extended() ? to_double(line_moments<extended>(w, 0, o).m[0])
                              : line_moments<double>(w, 0, o).m[0];
    }
    Weight scaled = w.scaled(1.0 / mass);
    scaled.label_ = spec.text();
    return scaled;
  }
  return w;
}

Weight Weight::operator*(const Weight& other) const {
  if (contour_ != other.contour_) {
    fail(ErrorCode::invalid_argument, "cannot multiply weights on different contours");
  }
  auto a = eval_, b = other.eval_;
  Evaluators ev;
  ev.f64 = [a, b](double x) { return a->f64(x) * b->f64(x); };
  if (a->f_ext && b->f_ext) ev.f_ext = [a, b](const extended& x) { return extended(a->f_ext(x) * b->f_ext(x)); };
  if (a->f_wide && b->f_wide) ev.f_wide = [a, b](const wide& x) { return wide(a->f_wide(x) * b->f_wide(x)); };
  Weight w(contour_, "(" + label_ + ")*(" + other.label_ + ")", std::move(ev));

  // Gaussian decomposition of the product.
  auto combine = [](const Weight& gauss, const Weight& rest, bool rest_gauss) {
    auto g1 = gauss.gauss_g_;
    auto g2 = rest_gauss ? rest.gauss_g_ : rest.eval_;
    Evaluators g;
    g.f64 = [g1, g2](double x) { return g1->f64(x) * g2->f64(x); };
    if (g1->f_ext && g2->f_ext) g.f_ext = [g1, g2](const extended& x) { return extended(g1->f_ext(x) * g2->f_ext(x)); };
    if (g1->f_wide && g2->f_wide) g.f_wide = [g1, g2](const wide& x) { return wide(g1->f_wide(x) * g2->f_wide(x)); };
    return std::make_shared<const Evaluators>(std::move(g));
  };
  if (contour_ == Contour::line) {
    const bool ga = gauss_a_ > 0.0, gb = other.gauss_a_ > 0.0;
    if (ga && gb) {
      w.gauss_a_ = gauss_a_ + other.gauss_a_;
      w.gauss_g_ = combine(*this, other, true);
      w.gauss_g_constant_ = gauss_g_constant_ && other.gauss_g_constant_;
    } else if (ga && !other.support_) {
      w.gauss_a_ = gauss_a_;
      w.gauss_g_ = combine(*this, other, false);
      w.gauss_g_constant_ = gauss_g_constant_ && other.const_value_.has_value();
    } else if (gb && !support_) {
      w.gauss_a_ = other.gauss_a_;
      w.gauss_g_ = combine(other, *this, false);
      w.gauss_g_constant_ = other.gauss_g_constant_ && const_value_.has_value();
    }
    if (support_ || other.support_) {
      auto s = support_ ? *support_ : *other.support_;
      if (support_ && other.support_) {
        s = {std::max(support_->first, other.support_->first),
             std::min(support_->second, other.support_->second)};
      }
      w.support_ = s;
    }
  }
  if (const_value_ && other.const_value_) w.const_value_ = *const_value_ * *other.const_value_;
  return w;
}

Weight Weight::scaled(double c) const {
  return (*this) * Weight::constant(contour_, c);
}

Weight Weight::homotopy(double t) const {
  auto a = eval_;
  Evaluators ev;
  ev.f64 = [a, t](double x) { return 1.0 - t + t * a->f64(x); };
  if (a->f_ext) ev.f_ext = [a, t](const extended& x) { return extended(1 - extended(t) + extended(t) * a->f_ext(x)); };
  if (a->f_wide) ev.f_wide = [a, t](const wide& x) { return wide(1 - wide(t) + wide(t) * a->f_wide(x)); };
  Weight w(contour_, "1-t+t*(" + label_ + ")", std::move(ev));
  if (const_value_) w.const_value_ = 1.0 - t + t * *const_value_;
  return w;
}

Weight Weight::minus_one() const {
  auto a = eval_;
  Evaluators ev;
  ev.f64 = [a](double x) { return a->f64(x) - 1.0; };
  if (a->f_ext) ev.f_ext = [a](const extended& x) { return extended(a->f_ext(x) - 1); };
  if (a->f_wide) ev.f_wide = [a](const wide& x) { return wide(a->f_wide(x) - 1); };
  Weight w(contour_, "(" + label_ + ")-1", std::move(ev));
  if (const_value_) w.const_value_ = *const_value_ - 1.0;
  return w;
}

double Weight::truncation_halfwidth(std::size_t power, double floor) const {
  if (support_) return std::max(std::abs(support_->first), std::abs(support_->second));
  const double peak = line_peak(*this);
  if (!(peak > 0.0)) fail(ErrorCode::degenerate_measure, "weight '" + label_ + "' vanishes");
  auto tail = [&](double x) {
    const double ax = std::abs(x);
    return std::pow(std::max(ax, 1.0), static_cast<double>(power) + 1.0) *
           std::max((*this)(x), (*this)(-x));
  };
  for (double L = 2.0; L <= 2000.0; L += 0.5) {
    bool ok = true;
    for (int k = 0; k <= 16 && ok; ++k) ok = tail(L + 0.5 * k) < floor * peak;
    if (ok) return L;
  }
  fail(ErrorCode::insufficient_decay,
       "weight '" + label_ + "' does not decay fast enough for moments of order " +
           std::to_string(power));
}

// ---------------------------------------------------------------------------
// Line moments

template <class Real>
quad::Rule<Real> line_rule(const Weight& w, std::size_t max_power, std::size_t min_nodes) {
  if (w.contour() != Contour::line) fail(ErrorCode::invalid_argument, "line_rule needs a line weight");
  auto eval_g = [&w](const Real& x) -> Real {
    if constexpr (std::is_same_v<Real, double>) return w.gaussian_factor()->f64(x);
    else return w.gaussian_factor()->f_ext(x);
  };
  auto eval_w = [&w](const Real& x) -> Real { return w(x); };

  if (w.gaussian_exponent() > 0.0 && (std::is_same_v<Real, double> || w.gaussian_factor_is_constant())) {
    const std::size_t exact_nodes = max_power / 2 + 1;
    std::size_t n = w.gaussian_factor_is_constant() ? exact_nodes : exact_nodes + 64;
    n = std::max(n, min_nodes);
    quad::Rule<Real> r = quad::gauss_hermite<Real>(n);
    using std::sqrt;
    const Real scale = 1 / sqrt(Real(w.gaussian_exponent()));
    for (std::size_t i = 0; i < n; ++i) {
      r.nodes[i] *= scale;
      r.weights[i] *= scale * eval_g(r.nodes[i]);
    }
    return r;
  }

  const double floor = std::is_same_v<Real, double> ? 1e-19 : 1e-58;
  double lo, hi;
  if (auto s = w.compact_support()) {
    lo = s->first;
    hi = s->second;
  } else {
    const double L = w.truncation_halfwidth(max_power, floor);
    lo = -L;
    hi = L;
  }
  const std::size_t order = std::is_same_v<Real, double> ? 20 : 32;
  std::size_t panels = static_cast<std::size_t>(std::ceil((hi - lo) / 0.5));
  panels = std::max<std::size_t>(panels, (min_nodes + order - 1) / order);
  quad::Rule<Real> r = quad::composite_gauss_legendre<Real>(Real(lo), Real(hi), panels, order);
  for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= eval_w(r.nodes[i]);
  return r;
}

namespace {

template <class Real>
std::vector<Real> moments_from_rule(const quad::Rule<Real>& r, std::size_t order) {
  std::vector<Real> m(order + 1, Real(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    Real p = r.weights[i];
    for (std::size_t j = 0; j <= order; ++j) {
      m[j] += p;
      p *= r.nodes[i];
    }
  }
  return m;
}

template <class Real>
void check_hankel_definite(const std::vector<Real>& m, const std::string& label) {
  const std::size_t n = m.size() / 2 + 1;
  DenseMatrix<Real> h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = (i + j < m.size()) ? m[i + j] : Real(0);
  // Only the fully populated leading block counts.
  const std::size_t full = (m.size() - 1) / 2 + 1;
  DenseMatrix<Real> hf(full, full);
  for (std::size_t i = 0; i < full; ++i)
    for (std::size_t j = 0; j < full; ++j) hf(i, j) = h(i, j);
  auto ldl = ldl_hermitian<Real>(hf);
  if (ldl.failed_at) {
    fail(ErrorCode::degenerate_measure, "Hankel matrix of '" + label +
                                            "' loses positive definiteness at order " +
                                            std::to_string(*ldl.failed_at));
  }
}

}  // namespace

template <class Real>
LineMoments<Real> line_moments(const Weight& w, std::size_t order, const LineMomentOptions& opts) {
  using std::abs;
  quad::Rule<Real> r = line_rule<Real>(w, order);
  std::vector<Real> m = moments_from_rule(r, order);
  const bool exact = w.gaussian_exponent() > 0.0 && w.gaussian_factor_is_constant();
  if (!exact) {
    // Refinement check: doubling the node count must not move any moment.
    quad::Rule<Real> r2 = line_rule<Real>(w, order, 2 * r.size());
    std::vector<Real> m2 = moments_from_rule(r2, order);
    const Real tol = std::is_same_v<Real, double> ? Real(opts.tolerance) : Real(1e-40);
    for (std::size_t j = 0; j <= order; ++j) {
      const Real scale = abs(m2[j]) + abs(m2[j - j % 2]) * Real(1e-3);
      if (abs(m2[j] - m[j]) > tol * (scale > 0 ? scale : Real(1))) {
        fail(ErrorCode::insufficient_decay,
             "line quadrature for '" + w.label() + "' not converged at moment " + std::to_string(j));
      }
    }
    m = std::move(m2);
  }
  if (opts.check_definiteness && order >= 2) check_hankel_definite(m, w.label());
  return {std::move(m)};
}

std::optional<LineMoments<rational>> exact_line_moments(const WeightSpec& spec, std::size_t order) {
  if (!std::holds_alternative<weights::Gauss>(spec.form)) return std::nullopt;
  LineMoments<rational> out;
  out.m.assign(order + 1, rational(0));
  // m_{2k} = (2k-1)!! / 2^k for e^{-x^2}/sqrt(pi).
  rational even(1);
  for (std::size_t j = 0; j <= order; j += 2) {
    out.m[j] = even;
    even *= rational(static_cast<long long>(j + 1), 2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Circle moments

std::vector<double> circle_samples(const Weight& w, std::size_t grid) {
  std::vector<double> v(grid);
  for (std::size_t j = 0; j < grid; ++j) v[j] = w(2.0 * M_PI * static_cast<double>(j) / grid);
  return v;
}

namespace {

template <class Real>
std::vector<complex_t<Real>> trapezoid_moments(const Weight& w, std::size_t grid, std::size_t kmax) {
  using std::cos;
  using std::sin;
  using C = complex_t<Real>;
  const Real two_pi = 2 * pi<Real>();
  std::vector<Real> vals(grid), cs(grid), sn(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const Real th = two_pi * Real(static_cast<double>(j)) / Real(static_cast<double>(grid));
    cs[j] = cos(th);
    sn[j] = sin(th);
    if constexpr (std::is_same_v<Real, double>) {
      vals[j] = w(th);
    } else {
      vals[j] = w(th);
    }
  }
  std::vector<C> mu(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    Real re(0), im(0);
    for (std::size_t j = 0; j < grid; ++j) {
      const std::size_t idx = (k * j) % grid;
      re += vals[j] * cs[idx];
      im -= vals[j] * sn[idx];
    }
    mu[k] = C(re / Real(static_cast<double>(grid)), im / Real(static_cast<double>(grid)));
  }
  return mu;
}

}  // namespace

template <class Real>
CircleMoments<Real> circle_moments(const Weight& w, std::size_t order, std::size_t grid) {
  using std::abs;
  if (w.contour() != Contour::circle) {
    fail(ErrorCode::invalid_argument, "circle_moments needs a circle weight");
  }
  const bool fixed = grid != 0;
  std::size_t n = grid;
  if (!fixed) {
    n = 256;
    while (n < 4 * (order + 1)) n *= 2;
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (;;) {
    if (n < 2 * order + 2) {
      fail(ErrorCode::grid_underresolved, "circle grid of " + std::to_string(n) +
                                              " points cannot resolve moment order " +
                                              std::to_string(order));
    }
    const std::size_t kmax = n / 2 - 1;
    auto mu = trapezoid_moments<Real>(w, n, kmax);
    Real tail(0);
    for (std::size_t k = kmax / 2; k <= kmax; ++k) tail = std::max<Real>(tail, Real(abs(mu[k])));
    const Real floor = Real(1000) * eps * Real(abs(mu[0]));
    if (tail <= floor) {
      mu.resize(order + 1);
      return {std::move(mu)};
    }
    if (fixed || n >= (std::size_t{1} << 16)) {
      fail(ErrorCode::grid_underresolved,
           "weight '" + w.label() + "' is underresolved on a " + std::to_string(n) +
               "-point grid (highest coefficients " + std::to_string(to_double(tail)) +
               " above noise floor)");
    }
    n *= 2;
  }
}

std::optional<std::vector<rational>> exact_circle_moments(const WeightSpec& spec, std::size_t order) {
  std::vector<rational> mu(order + 1, rational(0));
  if (std::holds_alternative<weights::Lebesgue>(spec.form)) {
    mu[0] = 1;
    return mu;
  }
  if (const auto* f = std::get_if<weights::OnePlusCos>(&spec.form)) {
    mu[0] = 1;
    // The double parameter converts to a rational exactly.
    if (order >= 1) mu[1] = rational(f->c) / 2;
    return mu;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Caratheodory / Schur

namespace {

void check_disk(cplx z) {
  if (!(std::abs(z) < 1.0)) fail(ErrorCode::domain_error, "point must satisfy |z| < 1");
}

void check_tail(const CircleMoments<double>& mom, cplx z, double tol) {
  const std::size_t M = mom.order();
  const double r = std::abs(z);
  if (r == 0.0) return;
  const double mu0 = std::abs(mom.mu[0]);
  double tail_coeff = 0.0;
  for (std::size_t k = M / 2 + 1; k <= M; ++k) tail_coeff = std::max(tail_coeff, std::abs(mom.mu[k]) / mu0);
  const double bound = 2.0 * tail_coeff * std::pow(r, static_cast<double>(M / 2 + 1)) / (1.0 - r);
  if (bound > tol) {
    fail(ErrorCode::insufficient_moments,
         "Caratheodory series tail estimate " + std::to_string(bound) + " exceeds tolerance");
  }
}

}  // namespace

cplx caratheodory(const CircleMoments<double>& moments, cplx z, double tolerance) {
  check_disk(z);
  check_tail(moments, z, tolerance);
  const cplx mu0 = moments.mu[0];
  cplx acc{}, zk = z;
  for (std::size_t k = 1; k < moments.mu.size(); ++k, zk *= z) acc += moments.mu[k] / mu0 * zk;
  return 1.0 + 2.0 * acc;
}

cplx schur_function(const CircleMoments<double>& moments, cplx z, double tolerance) {
  check_disk(z);
  check_tail(moments, z, tolerance);
  // f = S1 / S0 with S1 = sum mu_{k+1} z^k, S0 = 1 + sum_{k>=1} mu_k z^k.
  const cplx mu0 = moments.mu[0];
  cplx s0 = 1.0, s1{}, zk = 1.0;
  for (std::size_t k = 0; k + 1 < moments.mu.size(); ++k) {
    s1 += moments.mu[k + 1] / mu0 * zk;
    zk *= z;
    s0 += moments.mu[k + 1] / mu0 * zk;
  }
  const cplx f = s1 / s0;
  if (!(std::abs(f) < 1.0)) {
    fail(ErrorCode::degenerate_measure, "|Schur function| >= 1: measure degenerate or underresolved");
  }
  return f;
}

template quad::Rule<double> line_rule<double>(const Weight&, std::size_t, std::size_t);
template quad::Rule<extended> line_rule<extended>(const Weight&, std::size_t, std::size_t);
template LineMoments<double> line_moments<double>(const Weight&, std::size_t, const LineMomentOptions&);
template LineMoments<extended> line_moments<extended>(const Weight&, std::size_t, const LineMomentOptions&);
template CircleMoments<double> circle_moments<double>(const Weight&, std::size_t, std::size_t);
template CircleMoments<extended> circle_moments<extended>(const Weight&, std::size_t, std::size_t);
template CircleMoments<wide> circle_moments<wide>(const Weight&, std::size_t, std::size_t);

}  // namespace rhop
