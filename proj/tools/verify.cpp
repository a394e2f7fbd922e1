#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rhop/dets.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"
#include "rhop/rhp.hpp"
#include "rhop/toda.hpp"

namespace rhop::verify {

namespace {

// Collects sub-checks; the criterion reports the one closest to (or
// furthest beyond) its tolerance.
class Tally {
 public:
  void add(const std::string& what, double residual, double tolerance) {
    const bool ok = residual <= tolerance;  // NaN fails
    const double ratio = ok ? residual / tolerance : INFINITY;
    if (!ok && pass_) {
      pass_ = false;
      detail_ = what + ": " + fmt(residual) + " > " + fmt(tolerance);
    }
    if (ratio > worst_ || count_ == 0) {
      worst_ = ratio;
      residual_ = residual;
      tolerance_ = tolerance;
      if (pass_) detail_ = "worst: " + what;
    }
    ++count_;
  }
  // Runtime bound: can fail the criterion but never becomes its reported residual.
  void limit(const std::string& what, double seconds, double max_seconds) {
    if (!(seconds <= max_seconds) && pass_) {
      pass_ = false;
      detail_ = what + ": " + fmt(seconds) + " s > " + fmt(max_seconds) + " s";
    }
  }
  void require(const std::string& what, bool cond, double value = 0.0) {
    if (!cond && pass_) {
      pass_ = false;
      detail_ = what + " (value " + fmt(value) + ")";
    }
  }
  void fill(Check& c) const {
    c.pass = pass_;
    c.residual = residual_;
    c.tolerance = tolerance_;
    c.detail = detail_;
  }

  static std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
  }

 private:
  bool pass_ = true;
  double worst_ = -1.0;
  double residual_ = 0.0, tolerance_ = 0.0;
  std::string detail_;
  int count_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Weight weight(const char* spec) { return Weight::from_spec(parse_weight_spec(spec)); }

std::size_t cap(Suite s, std::size_t full) { return s == Suite::fast ? std::min<std::size_t>(full, 8) : full; }

const char* const kLineWeights[] = {"gauss", "quartic:g=1,d=0"};
const char* const kCircleWeights[] = {"onepluscos", "expcos:s=1"};

void three_way(Suite s, std::uint64_t, Tally& t) {
  const std::size_t N = cap(s, 20);
  for (const char* spec : kCircleWeights) {
    const Weight w = weight(spec);
    const VerblunskySeq lev = verblunsky_from_weight(w, N);
    const VerblunskySeq sg = to_double(schur_geronimus(circle_moments<double>(w, 2 * N + 16), N));
    double ls = 0, lr = 0, sr = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      const cplx a = solve_rhp_circle(w, n, 64).alpha;
      lr = std::max(lr, std::abs(a - lev.alpha[n - 1]));
      sr = std::max(sr, std::abs(a - sg.alpha[n - 1]));
      ls = std::max(ls, std::abs(lev.alpha[n - 1] - sg.alpha[n - 1]));
    }
    t.add(std::string(spec) + " levinson-schur", ls, 1e-8);
    t.add(std::string(spec) + " levinson-rhp", lr, 1e-8);
    t.add(std::string(spec) + " schur-rhp", sr, 1e-8);
  }
}

void golden(Suite s, std::uint64_t, Tally& t) {
  const VerblunskySeq v = verblunsky_from_weight(weight("onepluscos"), 2);
  t.add("alpha_0(1+cos) = 1/2", std::abs(v.alpha[0] - 0.5), 1e-10);
  t.add("|alpha_1(1+cos)| = 1/3", std::abs(std::abs(v.alpha[1]) - 1.0 / 3.0), 1e-10);
  const std::size_t N = cap(s, 10) + 1;
  const WeightSpec g = parse_weight_spec("gauss");
  for (Precision p : {Precision::standard, Precision::exact}) {
    const RecurrenceLine r = recurrence_from_measure(g, N + 1, p);
    double err = 0.0;
    for (std::size_t n = 0; n <= N - 1; ++n) {
      err = std::max(err, std::abs(r.a[n]));
      err = std::max(err, std::abs(r.b[n] - std::sqrt((n + 1) / 2.0)));
    }
    t.add(std::string("gauss recurrence (") + std::string(to_string(p)) + ")", err, 1e-10);
  }
}

void det_identities(Suite s, std::uint64_t, Tally& t) {
  const std::size_t N = cap(s, 12);
  for (const char* spec : kLineWeights) {
    const Weight w = weight(spec);
    const auto rec = recurrence_from_measure_ext(w, N + 1);
    double err = 0.0;
    extended prev = hankel_det(w, 0, Precision::extended).value;
    for (std::size_t n = 1; n <= N; ++n) {
      const extended cur = hankel_det(w, n, Precision::extended).value;
      const extended k2 = rec.k[n] * rec.k[n];
      using std::abs;
      err = std::max(err, to_double(extended(abs(prev / cur - k2) / k2)));
      prev = cur;
    }
    t.add(std::string(spec) + " D_{n-1}/D_n vs k_n^2", err, 1e-8);
  }
  for (const char* spec : kCircleWeights) {
    const Weight w = weight(spec);
    const auto mom = circle_moments<extended>(w, N);
    const auto v = verblunsky_levinson(mom, N);
    double err = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      const extended ratio = toeplitz_det(mom, n - 1) / toeplitz_det(mom, n);
      const extended k2 = v.kappa[n] * v.kappa[n];
      using std::abs;
      err = std::max(err, to_double(extended(abs(ratio - k2) / k2)));
    }
    t.add(std::string(spec) + " Delta_{n-1}/Delta_n vs kappa_n^2", err, 1e-8);
  }
}

void rhp(Suite s, std::uint64_t, Tally& t) {
  const std::size_t N = cap(s, 10);
  for (const char* spec : kLineWeights) {
    const Weight w = weight(spec);
    const auto pts = default_contour_points(Contour::line, 64);
    const auto tp = default_test_points(Contour::line, 16);
    for (std::size_t n = 0; n <= N; ++n) {
      RHSolution x = assemble_X(w, n);
      t.add(std::string(spec) + " X jump n=" + std::to_string(n), verify_jump(x, pts), 1e-8);
      t.add(std::string(spec) + " X det n=" + std::to_string(n), verify_det(x, tp), 1e-10);
      if (n + 1 <= N) {
        t.add(std::string(spec) + " line transfer n=" + std::to_string(n), transfer_identity_line(w, n, tp), 1e-9);
      }
    }
  }
  for (const char* spec : kCircleWeights) {
    const Weight w = weight(spec);
    const auto pts = default_contour_points(Contour::circle, 64);
    const auto tp = default_test_points(Contour::circle, 16);
    for (std::size_t n = 0; n <= N; ++n) {
      RHSolution y = assemble_Y(w, n);
      RHSolution sol = solve_rhp_circle(w, n, 64);
      const std::string tag = std::string(spec) + " n=" + std::to_string(n);
      t.add(tag + " Y jump", verify_jump(y, pts), 1e-8);
      t.add(tag + " Y det", verify_det(y, tp), 1e-10);
      double agree = 0.0;
      for (const cplx& z : tp) agree = std::max(agree, max_entry_diff(y.eval(z), sol.eval(z)));
      t.add(tag + " solver vs assembly", agree, 1e-8);
      if (n >= 1 && n + 1 <= N) {
        const auto tr = transfer_identity_circle(w, n, tp);
        t.add(tag + " circle transfer", tr.residual, 1e-9);
      }
    }
  }
}

void toda(Suite, std::uint64_t, Tally& t) {
  const RecurrenceLine rec = recurrence_from_measure(parse_weight_spec("gauss"), 5);
  const JacobiMatrix L0 = jacobi_from_recurrence(rec, 5);
  const JacobiMatrix a = toda_flow_spectral(L0, 1.0);
  const JacobiMatrix b = toda_flow_ode(L0, 1.0);
  double d = 0.0;
  for (std::size_t i = 0; i < 5; ++i) d = std::max(d, std::abs(a.diag[i] - b.diag[i]));
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.offdiag[i] - b.offdiag[i]));
  t.add("spectral vs RK4, N=5, t=1", d, 1e-6);
  const auto e0 = spectral_measure(L0).atoms, e1 = spectral_measure(b).atoms;
  double drift = 0.0;
  for (std::size_t i = 0; i < e0.size(); ++i) drift = std::max(drift, std::abs(e0[i] - e1[i]));
  t.add("RK4 eigenvalue drift", drift, 1e-10);
  const JacobiMatrix two{{0.0, 0.0}, {1.0}};
  for (double time : {0.25, 1.0}) {
    const double a0 = std::tanh(2 * time), b0 = 1.0 / std::cosh(2 * time);
    for (const JacobiMatrix& L : {toda_flow_spectral(two, time), toda_flow_ode(two, time)}) {
      const double e = std::max({std::abs(L.diag[0] - a0), std::abs(L.diag[1] + a0), std::abs(L.offdiag[0] - b0)});
      t.add("2x2 closed form t=" + Tally::fmt(time), e, 1e-8);
    }
  }
}

void reldet(Suite s, std::uint64_t, Tally& t) {
  RelDetJob c;
  c.contour = Contour::circle;
  c.omega1 = weight("expcos:s=1");
  c.omega2 = Weight::constant(Contour::circle, 1.0);
  c.n = cap(s, 10);
  auto t0 = std::chrono::steady_clock::now();
  const DetReport rc = relative_logdet_report(c);
  t.add("circle e^{cos}, n=" + std::to_string(c.n), rc.abs_err, 1e-6);
  t.limit("circle runtime", seconds_since(t0), 60.0);
  RelDetJob l;
  l.contour = Contour::line;
  l.omega1 = weight("bump:c=0.5,a=1");
  l.omega2 = weight("gauss");
  l.n = cap(s, 6);
  t0 = std::chrono::steady_clock::now();
  const DetReport rl = relative_logdet_report(l);
  t.add("line 1+e^{-x^2}/2 over gauss, n=" + std::to_string(l.n), rl.abs_err, 1e-6);
  t.limit("line runtime", seconds_since(t0), 60.0);
}

void one_point(Suite s, std::uint64_t, Tally& t) {
  const std::size_t N = cap(s, 10);
  std::vector<const char*> specs(std::begin(kLineWeights), std::end(kLineWeights));
  specs.insert(specs.end(), std::begin(kCircleWeights), std::end(kCircleWeights));
  for (const char* spec : specs) {
    const Weight w = weight(spec);
    for (std::size_t n = 0; n <= N; ++n) {
      const OnePointFunction f = one_point_fn(w, n);
      const std::string tag = std::string(spec) + " n=" + std::to_string(n);
      t.add(tag + " vs CD sum", f.cd_residual, 1e-8);
      t.add(tag + " normalization", f.normalization_error, 1e-8);
    }
  }
}

void szego(Suite s, std::uint64_t, Tally& t) {
  const std::size_t N = cap(s, 30);
  const SzegoTable tab = szego_table(1.0, 1, N);
  t.add("|ln Delta_" + std::to_string(N) + " - 1/4|", tab.rows.back().abs_err, 1e-4);
  t.require("error monotone decreasing for n >= 5", tab.monotone);
}

void hankel_limit(Suite s, std::uint64_t, Tally& t) {
  const HankelLimitTable tab = hankel_strong_limit_check(weight("bump:c=0.5,a=1"), 4, cap(s, 16));
  t.require("|LHS - RHS| decreasing over n", tab.decreasing);
  t.add("final |LHS - RHS| below first", std::abs(tab.rows.back().diff), std::abs(tab.rows.front().diff));
}

void toeplitz_decay(Suite s, std::uint64_t, Tally& t) {
  const std::size_t n = cap(s, 16);
  const DecayReport d = toeplitz_inverse_decay(weight("onepluscos:c=-0.8"), n);
  t.require("max error in corner j,k >= n-2", d.max_j + 2 >= n && d.max_k + 2 >= n,
            static_cast<double>(std::min(d.max_j, d.max_k)));
  t.require("fitted decay rate positive", d.rate > 0.0 && d.fit_points >= 3, d.rate);
  t.add("error matrix symmetry", d.symmetry_residual, 1e-12);
}

void pinter_nevai(Suite s, std::uint64_t seed, Tally& t) {
  const std::size_t N = cap(s, 15);
  auto check = [&](const std::string& tag, const VerblunskySeq& v) {
    double r = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      const WallReport w = wall_pinter_nevai(v, n);
      r = std::max({r, w.residual, w.residual_star});
    }
    t.add(tag, r, 1e-10);
  };
  for (const char* spec : {"lebesgue", "onepluscos", "onepluscos:c=-0.8", "expcos:s=1", "expcos:s=0.5"}) {
    check(spec, verblunsky_from_weight(weight(spec), N));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 0.5), angle(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> alpha(N);
    for (auto& a : alpha) a = std::polar(radius(rng), angle(rng));
    const VerblunskySeq v = verblunsky_from_alpha(alpha);
    for (std::size_t n = 1; n <= N; ++n) {
      const WallReport w = wall_pinter_nevai(v, n);
      worst = std::max({worst, w.residual, w.residual_star});
    }
  }
  t.add("100 random sequences |alpha| <= 0.5", worst, 1e-10);
}

struct Criterion {
  const char* name;
  double time_limit;
  std::function<void(Suite, std::uint64_t, Tally&)> run;
};

const Criterion kCriteria[] = {
    {"three-way Verblunsky agreement", 10.0, three_way},
    {"golden values", 0.0, golden},
    {"determinant identities", 0.0, det_identities},
    {"RHP correctness", 0.0, rhp},
    {"Toda flow", 5.0, toda},
    {"relative determinant formulae", 0.0, reldet},
    {"one-point function", 0.0, one_point},
    {"strong Szego limit", 0.0, szego},
    {"Hankel analog trend", 0.0, hankel_limit},
    {"Toeplitz inverse decay", 0.0, toeplitz_decay},
    {"Pinter-Nevai identities", 0.0, pinter_nevai},
};

}  // namespace

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

Check run_criterion(int id, Suite suite, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(std::size(kCriteria))) {
    throw Error(ErrorCode::invalid_argument, "verify", "no criterion " + std::to_string(id));
  }
  const Criterion& c = kCriteria[id - 1];
  Check out;
  out.id = id;
  out.name = c.name;
  out.time_limit = c.time_limit;
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    c.run(suite, seed, t);
    t.fill(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("error: ") + e.what();
  }
  out.seconds = seconds_since(t0);
  if (out.pass && out.time_limit > 0.0 && out.seconds > out.time_limit) {
    out.pass = false;
    out.detail = "runtime " + Tally::fmt(out.seconds) + " s over " + Tally::fmt(out.time_limit) + " s";
  }
  return out;
}

Report run_all(Suite suite, std::uint64_t seed) {
  Report r;
  r.suite = suite;
  r.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  for (int id = 1; id <= static_cast<int>(std::size(kCriteria)); ++id) r.checks.push_back(run_criterion(id, suite, seed));
  r.seconds = seconds_since(t0);
  return r;
}

std::string report_json(const Report& r) {
  using nlohmann::json;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"id", c.id},
                      {"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"seconds", c.seconds},
                      {"time_limit", c.time_limit},
                      {"detail", c.detail}});
  }
  return json{{"suite", r.suite == Suite::fast ? "fast" : "full"},
              {"seed", r.seed},
              {"pass", r.pass()},
              {"seconds", r.seconds},
              {"checks", checks}}
             .dump(2) +
         "\n";
}

}  // namespace rhop::verify
