// rhop: command-line front end.
//
// Every subcommand writes one artifact (to --out, or stdout) and a one-line
// summary (to stdout when --out is given, otherwise stderr).  Settings are
// resolved as: command-line flag, then --config file, then RHOP_PRECISION
// (precision only), then the built-in default.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhop/dets.hpp"
#include "rhop/io.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"
#include "rhop/rhp.hpp"
#include "rhop/toda.hpp"
#include "verify.hpp"

using nlohmann::json;
using namespace rhop;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags as given on the command line; unset means "not given".
struct Flags {
  std::optional<std::string> config, weight, weight2, precision, out, format, suite, method;
  std::optional<long long> n, n_min, modes, tnodes, size;
  std::optional<unsigned long long> seed;
  std::optional<double> t, s;
};

const std::map<std::string, json::value_t> kConfigKeys = {
    {"command", json::value_t::string},  {"weight", json::value_t::string},
    {"weight2", json::value_t::string},  {"precision", json::value_t::string},
    {"out", json::value_t::string},      {"format", json::value_t::string},
    {"suite", json::value_t::string},    {"method", json::value_t::string},
    {"n", json::value_t::number_unsigned},     {"n_min", json::value_t::number_unsigned},
    {"modes", json::value_t::number_unsigned}, {"tnodes", json::value_t::number_unsigned},
    {"size", json::value_t::number_unsigned},  {"seed", json::value_t::number_unsigned},
    {"t", json::value_t::number_float},  {"s", json::value_t::number_float},
};

class Settings {
 public:
  Settings(std::string command, const Flags& f) : command_(std::move(command)), flags_(f) {
    if (f.config) load(*f.config);
  }

  std::string str(const std::string& key, const std::optional<std::string>& flag, std::string fallback) const {
    if (flag) return *flag;
    if (config_.contains(key)) return config_[key].get<std::string>();
    return fallback;
  }
  std::optional<std::string> str_opt(const std::string& key, const std::optional<std::string>& flag) const {
    if (flag) return flag;
    if (config_.contains(key)) return config_[key].get<std::string>();
    return std::nullopt;
  }
  std::size_t count(const std::string& key, const std::optional<long long>& flag, std::size_t fallback,
                    std::size_t min = 0) const {
    long long v = static_cast<long long>(fallback);
    if (flag) v = *flag;
    else if (config_.contains(key)) v = config_[key].get<long long>();
    if (v < static_cast<long long>(min)) {
      throw ConfigError(key + " must be >= " + std::to_string(min) + ", got " + std::to_string(v));
    }
    return static_cast<std::size_t>(v);
  }
  double real(const std::string& key, const std::optional<double>& flag, double fallback) const {
    if (flag) return *flag;
    if (config_.contains(key)) return config_[key].get<double>();
    return fallback;
  }

  Precision precision() const {
    std::string p = "double";
    if (flags_.precision) p = *flags_.precision;
    else if (config_.contains("precision")) p = config_["precision"].get<std::string>();
    else if (const char* env = std::getenv("RHOP_PRECISION"); env && *env) p = env;
    if (p != "double" && p != "extended" && p != "exact") {
      throw ConfigError("precision must be double, extended or exact, got '" + p + "'");
    }
    return parse_precision(p);
  }

  std::string format(const std::string& native) const {
    const std::string f = str("format", flags_.format, native);
    if (f != "csv" && f != "json") throw ConfigError("format must be csv or json, got '" + f + "'");
    return f;
  }

  const Flags& flags() const { return flags_; }
  const std::string& command() const { return command_; }

 private:
  void load(const std::string& path) {
    std::string text;
    try {
      text = io::read_file(path);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    try {
      config_ = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!config_.is_object()) throw ConfigError("config '" + path + "' must be a JSON object");
    for (const auto& [key, value] : config_.items()) {
      auto it = kConfigKeys.find(key);
      if (it == kConfigKeys.end()) throw ConfigError("unknown config key '" + key + "'");
      const auto want = it->second;
      const bool ok = want == json::value_t::number_float ? value.is_number()
                      : want == json::value_t::number_unsigned ? value.is_number_unsigned()
                                                               : value.type() == want;
      if (!ok) throw ConfigError("config key '" + key + "' has the wrong type");
    }
    if (config_.contains("command") && config_["command"].get<std::string>() != command_) {
      throw ConfigError("config is for command '" + config_["command"].get<std::string>() + "', not '" +
                        command_ + "'");
    }
  }

  std::string command_;
  Flags flags_;
  json config_ = json::object();
};

// Artifact plus summary line.
struct Output {
  std::string artifact;
  std::string summary;
  int status = 0;
};

std::string num(double x) { return io::format_double(x); }

// A CSV artifact re-emitted as {"columns": [...], "rows": [[...]]}.
std::string csv_as_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  json cols = json::array(), rows = json::array();
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string c;
    while (std::getline(ss, c, ',')) out.push_back(c);
    if (!l.empty() && l.back() == ',') out.emplace_back();
    return out;
  };
  for (const auto& c : cells(line)) cols.push_back(c);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::array();
    for (const auto& c : cells(line)) {
      if (c.empty()) row.push_back(nullptr);
      else row.push_back(std::stod(c));
    }
    rows.push_back(row);
  }
  return json{{"columns", cols}, {"rows", rows}}.dump(2) + "\n";
}

std::string table(const Settings& st, const std::string& csv) {
  return st.format("csv") == "csv" ? csv : csv_as_json(csv);
}

void json_only(const Settings& st) {
  if (st.format("json") != "json") throw ConfigError(st.command() + " emits JSON only");
}

WeightSpec spec_of(const Settings& st, const std::string& fallback, const char* key = "weight") {
  const auto& flag = std::string(key) == "weight" ? st.flags().weight : st.flags().weight2;
  const std::string text = st.str(key, flag, fallback);
  try {
    return parse_weight_spec(text);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Contour require_contour(const WeightSpec& w, std::optional<Contour> want, const std::string& cmd) {
  if (want && w.contour != *want) {
    throw ConfigError(cmd + " needs a " + std::string(to_string(*want)) + " weight, got '" + w.text() + "'");
  }
  return w.contour;
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_moments(const Settings& st) {
  const WeightSpec spec = spec_of(st, "gauss");
  const std::size_t n = st.count("n", st.flags().n, 8);
  const Precision p = st.precision();
  const Weight w = Weight::from_spec(spec);
  Output o;
  if (spec.contour == Contour::circle) {
    CircleMoments<double> m;
    if (p == Precision::exact) {
      auto ex = exact_circle_moments(spec, n);
      if (!ex) throw Error(ErrorCode::invalid_argument, "measures", "no exact moments for '" + spec.text() + "'");
      for (const auto& q : *ex) m.mu.emplace_back(static_cast<double>(q), 0.0);
    } else if (p == Precision::extended) {
      for (const auto& z : circle_moments<extended>(w, n).mu) m.mu.push_back(to_cplx(z));
    } else {
      m = circle_moments<double>(w, n);
    }
    o.artifact = table(st, io::circle_moments_csv(m));
    o.summary = "moments: mu_0 = " + num(m.mu[0].real()) + " (order " + std::to_string(n) + ")";
  } else {
    LineMoments<double> m;
    if (p == Precision::exact) {
      auto ex = exact_line_moments(spec, n);
      if (!ex) throw Error(ErrorCode::invalid_argument, "measures", "no exact moments for '" + spec.text() + "'");
      for (const auto& q : ex->m) m.m.push_back(static_cast<double>(q));
    } else if (p == Precision::extended) {
      for (const auto& x : line_moments<extended>(w, n).m) m.m.push_back(to_double(x));
    } else {
      m = line_moments<double>(w, n);
    }
    o.artifact = table(st, io::line_moments_csv(m));
    o.summary = "moments: m_0 = " + num(m.m[0]) + " (order " + std::to_string(n) + ")";
  }
  return o;
}

Output cmd_oprl(const Settings& st) {
  const WeightSpec spec = spec_of(st, "gauss");
  require_contour(spec, Contour::line, "oprl");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const RecurrenceLine r = recurrence_from_measure(spec, n, st.precision());
  Output o;
  o.artifact = table(st, io::recurrence_csv(r));
  o.summary = "oprl: a_0 = " + num(r.a[0]) + ", " + std::to_string(r.a.size()) + " coefficients";
  if (r.breakdown) {
    o.summary += " (breakdown at degree " + std::to_string(r.breakdown->degree) + ": " + r.breakdown->reason + ")";
  }
  return o;
}

Output cmd_opuc(const Settings& st) {
  const WeightSpec spec = spec_of(st, "onepluscos");
  require_contour(spec, Contour::circle, "opuc");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const VerblunskySeq v = verblunsky_from_spec(spec, n, st.precision());
  Output o;
  o.artifact = table(st, io::verblunsky_csv(v));
  o.summary = "opuc: alpha_0 = " + num(v.alpha[0].real()) + (v.alpha[0].imag() != 0 ? " + " + num(v.alpha[0].imag()) + "i" : "") +
              ", " + std::to_string(v.alpha.size()) + " coefficients";
  return o;
}

Output cmd_hankel(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "gauss");
  require_contour(spec, Contour::line, "hankel");
  const std::size_t n = st.count("n", st.flags().n, 8);
  const Precision p = st.precision();
  json j = {{"n", n}, {"weight", spec.text()}};
  if (p == Precision::exact) {
    auto ex = exact_line_moments(spec, 2 * n);
    if (!ex) throw Error(ErrorCode::invalid_argument, "opline", "no exact moments for '" + spec.text() + "'");
    const rational d = hankel_det<rational>(ex->m, n);
    j["det"] = static_cast<double>(d);
    j["det_exact"] = d.str();
    j["precision_used"] = "exact";
  } else {
    const HankelDet d = hankel_det(Weight::from_spec(spec), n, p);
    using std::log;
    j["det"] = to_double(d.value);
    j["log_det"] = to_double(extended(log(d.value)));
    j["precision_used"] = std::string(to_string(d.precision_used));
  }
  return {j.dump(2) + "\n", "hankel: D_" + std::to_string(n) + " = " + num(j["det"].get<double>()), 0};
}

Output cmd_toeplitz(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "onepluscos");
  require_contour(spec, Contour::circle, "toeplitz");
  const std::size_t n = st.count("n", st.flags().n, 8);
  const Precision p = st.precision();
  json j = {{"n", n}, {"weight", spec.text()}, {"precision_used", std::string(to_string(p))}};
  if (p == Precision::exact) {
    auto ex = exact_circle_moments(spec, n);
    if (!ex) throw Error(ErrorCode::invalid_argument, "opcircle", "no exact moments for '" + spec.text() + "'");
    const rational d = toeplitz_det_exact(*ex, n);
    j["det"] = static_cast<double>(d);
    j["det_exact"] = d.str();
  } else if (p == Precision::extended) {
    const auto m = circle_moments<extended>(Weight::from_spec(spec), n);
    j["det"] = to_double(toeplitz_det(m, n));
    j["log_det"] = to_double(toeplitz_logdet(m, n));
  } else {
    const auto m = circle_moments<double>(Weight::from_spec(spec), n);
    j["det"] = toeplitz_det(m, n);
    j["log_det"] = toeplitz_logdet(m, n);
  }
  return {j.dump(2) + "\n", "toeplitz: Delta_" + std::to_string(n) + " = " + num(j["det"].get<double>()), 0};
}

Output cmd_jacobi(const Settings& st) {
  const WeightSpec spec = spec_of(st, "gauss");
  require_contour(spec, Contour::line, "jacobi");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const JacobiMatrix L = jacobi_from_recurrence(recurrence_from_measure(spec, n, st.precision()), n);
  Output o;
  // JSON: the matrix.  CSV: its spectral measure (Gauss rule).
  o.artifact = st.format("json") == "json" ? io::jacobi_json(L) : io::measure_csv(spectral_measure(L));
  o.summary = "jacobi: " + std::to_string(n) + " x " + std::to_string(n) + ", a_0 = " + num(L.diag[0]);
  return o;
}

Output cmd_cmv(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "onepluscos");
  require_contour(spec, Contour::circle, "cmv");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const VerblunskySeq v = verblunsky_from_spec(spec, n + 1, st.precision());
  const CMVMatrix C = cmv_build(v, n);
  // The section reproduces conj(mu_k) of the probability measure up to the window.
  const std::size_t window = cmv_moment_window(n);
  const auto mom = circle_moments<double>(Weight::from_spec(spec), window);
  double diff = 0.0;
  for (std::size_t k = 0; k <= window; ++k) {
    diff = std::max(diff, std::abs(cmv_moment(C, k) - std::conj(mom.at(static_cast<long>(k))) / mom.at(0).real()));
  }
  return {io::cmv_json(C), "cmv: " + std::to_string(n) + " x " + std::to_string(n) + " section, moments 0.." +
                               std::to_string(window) + " agree to " + num(diff), 0};
}

Output cmd_toda(const Settings& st) {
  json_only(st);
  const std::size_t N = st.count("size", st.flags().size, 2, 2);
  const double t = st.real("t", st.flags().t, 1.0);
  const std::string method = st.str("method", st.flags().method, "spectral");
  if (method != "spectral" && method != "ode") throw ConfigError("method must be spectral or ode");
  JacobiMatrix L0;
  if (auto w = st.str_opt("weight", st.flags().weight)) {
    const WeightSpec spec = spec_of(st, *w);
    require_contour(spec, Contour::line, "toda");
    L0 = jacobi_from_recurrence(recurrence_from_measure(spec, N), N);
  } else {
    // Free start: a = 0, b = 1 (the 2 x 2 case flows to tanh 2t, sech 2t).
    L0.diag.assign(N, 0.0);
    L0.offdiag.assign(N - 1, 1.0);
  }
  const JacobiMatrix L = method == "spectral" ? toda_flow_spectral(L0, t) : toda_flow_ode(L0, t);
  json j = json::parse(io::jacobi_json(L));
  j["t"] = t;
  j["method"] = method;
  j["a_0"] = L.diag[0];
  return {j.dump(2) + "\n", "toda: a_0(" + num(t) + ") = " + num(L.diag[0]) + " (" + method + ")", 0};
}

Output cmd_schur(const Settings& st) {
  const WeightSpec spec = spec_of(st, "onepluscos");
  require_contour(spec, Contour::circle, "schur");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const Weight w = Weight::from_spec(spec);
  VerblunskySeq v;
  if (st.precision() == Precision::extended) {
    v = to_double(schur_geronimus(circle_moments<extended>(w, 2 * n + 16), n));
  } else {
    v = to_double(schur_geronimus(circle_moments<double>(w, 2 * n + 16), n));
  }
  const VerblunskySeq lev = verblunsky_from_weight(w, n);
  double diff = 0.0;
  for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, std::abs(v.alpha[k] - lev.alpha[k]));
  return {table(st, io::verblunsky_csv(v)), "schur: " + std::to_string(n) + " parameters, max |alpha - levinson| = " + num(diff), 0};
}

Output cmd_wall(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "onepluscos");
  require_contour(spec, Contour::circle, "wall");
  const std::size_t n = st.count("n", st.flags().n, 8, 1);
  const WallReport r = wall_pinter_nevai(verblunsky_from_spec(spec, n, st.precision()), n);
  return {io::wall_json(r), "wall: residuals " + num(r.residual) + ", " + num(r.residual_star), 0};
}

RHSolution solve(const Settings& st, const Weight& w, std::size_t n) {
  if (w.contour() == Contour::circle) return solve_rhp_circle(w, n, st.count("modes", st.flags().modes, 64, 2));
  return assemble_X(w, n);
}

Output cmd_rhp_solve(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "onepluscos");
  const std::size_t n = st.count("n", st.flags().n, 4);
  const Weight w = Weight::from_spec(spec);
  RHSolution s = solve(st, w, n);
  verify_jump(s, default_contour_points(spec.contour, 64));
  verify_det(s, default_test_points(spec.contour, 16));
  return {io::rh_solution_json(io::summarize(s)),
          "rhp-solve: " + std::string(to_string(spec.contour)) + " n = " + std::to_string(n) + ", jump residual " +
              num(s.jump_residual) + ", det residual " + num(s.det_residual),
          0};
}

Output cmd_rhp_verify(const Settings& st) {
  json_only(st);
  const WeightSpec spec = spec_of(st, "onepluscos");
  const std::size_t n = st.count("n", st.flags().n, 4);
  const Weight w = Weight::from_spec(spec);
  const auto pts = default_contour_points(spec.contour, 64);
  const auto tp = default_test_points(spec.contour, 16);
  RHSolution a = spec.contour == Contour::circle ? assemble_Y(w, n) : assemble_X(w, n);
  json j = {{"contour", std::string(to_string(spec.contour))}, {"n", n}, {"weight", spec.text()}};
  j["jump_residual"] = verify_jump(a, pts);
  j["det_residual"] = verify_det(a, tp);
  j["normalization_residual"] = a.normalization_residual;
  bool pass = j["jump_residual"].get<double>() <= 1e-8 && j["det_residual"].get<double>() <= 1e-10;
  if (spec.contour == Contour::circle) {
    const RHSolution sol = solve_rhp_circle(w, n, st.count("modes", st.flags().modes, 64, 2));
    double agree = 0.0;
    for (const cplx& z : tp) agree = std::max(agree, max_entry_diff(a.eval(z), sol.eval(z)));
    j["solver_agreement"] = agree;
    pass = pass && agree <= 1e-8;
    if (n >= 1) {
      const auto tr = transfer_identity_circle(w, n, tp);
      j["transfer_residual"] = tr.residual;
      pass = pass && tr.residual <= 1e-9;
    }
  } else {
    const auto e = n >= 1 ? std::optional(extract_line_coefficients(w, n)) : std::nullopt;
    const double tr = transfer_identity_line(w, n, tp);
    j["transfer_residual"] = tr;
    if (e) j["extracted"] = {{"a", e->a}, {"b2", e->b2}, {"k2", e->k2}};
    pass = pass && tr <= 1e-9;
  }
  j["pass"] = pass;
  return {j.dump(2) + "\n",
          std::string("rhp-verify: ") + (pass ? "pass" : "FAIL") + ", jump residual " + num(j["jump_residual"].get<double>()),
          pass ? 0 : kExitChecksFailed};
}

Output cmd_onepoint(const Settings& st) {
  const WeightSpec spec = spec_of(st, "onepluscos");
  const std::size_t n = st.count("n", st.flags().n, 4);
  const OnePointFunction f = one_point_fn(Weight::from_spec(spec), n, st.count("modes", st.flags().modes, 256, 8));
  Output o;
  if (st.format("csv") == "csv") {
    o.artifact = io::one_point_csv(f);
  } else {
    json j = {{"contour", std::string(to_string(f.contour))}, {"n", n}, {"cd_residual", f.cd_residual},
              {"normalization", f.normalization}, {"normalization_error", f.normalization_error},
              {"points", f.points}, {"R", f.values}, {"cd", f.cd_sum}};
    o.artifact = j.dump(2) + "\n";
  }
  o.summary = "onepoint: int R = " + num(f.normalization) + " (n + 1 = " + std::to_string(n + 1) +
              "), max |R - CD| = " + num(f.cd_residual);
  return o;
}

Output cmd_reldet(const Settings& st) {
  json_only(st);
  const WeightSpec w1 = spec_of(st, "expcos:s=1");
  RelDetJob job;
  job.contour = w1.contour;
  job.omega1 = Weight::from_spec(w1);
  const std::string fallback = w1.contour == Contour::circle ? "lebesgue" : "gauss";
  const WeightSpec w2 = spec_of(st, fallback, "weight2");
  require_contour(w2, w1.contour, "reldet (weight2)");
  job.omega2 = Weight::from_spec(w2);
  job.n = st.count("n", st.flags().n, w1.contour == Contour::circle ? 10 : 6);
  job.t_nodes = st.count("tnodes", st.flags().tnodes, 24, 1);
  if (auto m = st.flags().modes) job.grid = st.count("modes", m, 512, 8);
  const DetReport r = relative_logdet_report(job);
  return {io::det_report_json(r), "reldet: formula " + num(r.lhs) + ", determinants " + num(r.rhs) + ", abs err " + num(r.abs_err), 0};
}

Output cmd_szego(const Settings& st) {
  json_only(st);
  const double s = st.real("s", st.flags().s, 1.0);
  const std::size_t n = st.count("n", st.flags().n, 30, 1);
  const SzegoTable t = szego_table(s, std::min<std::size_t>(st.count("n_min", st.flags().n_min, 1), n), n);
  return {io::szego_json(t), "szego: ln Delta_" + std::to_string(n) + " = " + num(t.rows.back().measured) +
                                 ", prediction " + num(t.prediction) + ", abs err " + num(t.rows.back().abs_err), 0};
}

Output cmd_hankel_limit(const Settings& st) {
  json_only(st);
  const WeightSpec w1 = spec_of(st, "bump:c=0.5,a=1");
  require_contour(w1, Contour::line, "hankel-limit");
  const std::size_t n = st.count("n", st.flags().n, 16, 1);
  const std::size_t n_min = std::min(st.count("n_min", st.flags().n_min, 4), n);
  const HankelLimitTable t = hankel_strong_limit_check(Weight::from_spec(w1), n_min, n);
  return {io::hankel_limit_json(t), "hankel-limit: LHS - RHS at n = " + std::to_string(n) + " is " +
                                        num(t.rows.back().diff) + (t.decreasing ? " (decreasing)" : " (not decreasing)"), 0};
}

Output cmd_tinv_decay(const Settings& st) {
  const WeightSpec spec = spec_of(st, "onepluscos:c=-0.8");
  require_contour(spec, Contour::circle, "tinv-decay");
  const std::size_t n = st.count("n", st.flags().n, 16);
  const DecayReport d = toeplitz_inverse_decay(Weight::from_spec(spec), n);
  Output o;
  if (st.format("csv") == "csv") {
    o.artifact = io::decay_csv(d);
  } else {
    json j = {{"n", n}, {"reference_size", d.reference_size}, {"max_j", d.max_j}, {"max_k", d.max_k},
              {"max_err", d.max_err}, {"rate", d.rate}, {"intercept", d.intercept}, {"fit_points", d.fit_points},
              {"symmetry_residual", d.symmetry_residual}};
    o.artifact = j.dump(2) + "\n";
  }
  o.summary = "tinv-decay: max error " + num(d.max_err) + " at (" + std::to_string(d.max_j) + ", " +
              std::to_string(d.max_k) + "), fitted rate " + num(d.rate);
  return o;
}

Output cmd_verify_all(const Settings& st) {
  json_only(st);
  const std::string suite = st.str("suite", st.flags().suite, "fast");
  if (suite != "fast" && suite != "full") throw ConfigError("suite must be fast or full");
  const auto seed = st.flags().seed ? *st.flags().seed : static_cast<unsigned long long>(st.count("seed", std::nullopt, 1));
  const verify::Report r = verify::run_all(suite == "fast" ? verify::Suite::fast : verify::Suite::full, seed);
  std::ostringstream lines;
  for (const auto& c : r.checks) {
    lines << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.id << ". " << c.name << ": residual "
          << num(c.residual) << " (tol " << num(c.tolerance) << "), " << c.seconds << " s";
    if (!c.pass) lines << " -- " << c.detail;
    lines << "\n";
  }
  std::cerr << lines.str();
  return {verify::report_json(r),
          "verify-all " + suite + ": " + (r.pass() ? "pass" : "FAIL") + " in " + std::to_string(r.seconds) + " s",
          r.pass() ? 0 : kExitChecksFailed};
}

void emit_error(const std::string& code, const std::string& module, const std::string& message) {
  std::cerr << json{{"code", code}, {"module", module}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials, Riemann-Hilbert problems and determinant asymptotics"};
  app.require_subcommand(1);
  Flags f;

  using Handler = Output (*)(const Settings&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"moments", "moments of a weight (CSV k,re,im or j,m)", cmd_moments},
      {"oprl", "three-term recurrence coefficients (CSV n,a,b,k)", cmd_oprl},
      {"opuc", "Verblunsky coefficients (CSV n,re,im,rho,kappa)", cmd_opuc},
      {"hankel", "Hankel determinant D_n", cmd_hankel},
      {"toeplitz", "Toeplitz determinant Delta_n", cmd_toeplitz},
      {"jacobi", "Jacobi matrix (JSON) or its spectral measure (CSV)", cmd_jacobi},
      {"cmv", "CMV matrix section (JSON bands)", cmd_cmv},
      {"toda", "Toda flow of a Jacobi matrix", cmd_toda},
      {"schur", "Verblunsky coefficients by the Schur algorithm", cmd_schur},
      {"wall", "Wall polynomials and Pinter-Nevai residuals", cmd_wall},
      {"rhp-solve", "solve the OP Riemann-Hilbert problem", cmd_rhp_solve},
      {"rhp-verify", "jump, determinant and transfer checks", cmd_rhp_verify},
      {"onepoint", "one-point function against the Christoffel-Darboux sum", cmd_onepoint},
      {"reldet", "relative determinant by the t-integral formula", cmd_reldet},
      {"szego", "strong Szego limit for e^{s cos theta}", cmd_szego},
      {"hankel-limit", "Hankel strong-limit analog table", cmd_hankel_limit},
      {"tinv-decay", "Toeplitz inverse section error and decay fit", cmd_tinv_decay},
      {"verify-all", "cross-method agreement suites (fast | full)", cmd_verify_all},
  };

  std::string chosen;
  Handler handler = nullptr;
  for (const auto& [name, help, h] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "JSON file with default settings");
    sub->add_option("--weight", f.weight, "weight spec, e.g. gauss, onepluscos, expcos:s=1");
    sub->add_option("--n", f.n, "degree / size");
    sub->add_option("--precision", f.precision, "double | extended | exact");
    sub->add_option("--modes", f.modes, "Fourier modes (circle solver) or grid points");
    sub->add_option("--tnodes", f.tnodes, "Gauss-Legendre nodes in t");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "csv | json");
    sub->add_option("--seed", f.seed, "seed for randomized suites");
    if (name == "toda") {
      sub->add_option("--size", f.size, "matrix size N");
      sub->add_option("--t", f.t, "flow time");
      sub->add_option("--method", f.method, "spectral | ode");
    }
    if (name == "szego") sub->add_option("--s", f.s, "coupling s in e^{s cos theta}");
    if (name == "szego" || name == "hankel-limit") sub->add_option("--n-min", f.n_min, "first n of the table");
    if (name == "reldet") sub->add_option("--weight2", f.weight2, "reference weight omega_2");
    if (name == "verify-all") sub->add_option("suite", f.suite, "fast | full");
    sub->callback([&chosen, &handler, n = name, h = h] {
      chosen = n;
      handler = h;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("config_error", "cli", e.what());
    return kExitConfig;
  }

  try {
    const Settings st(chosen, f);
    const Output o = handler(st);
    if (auto out = st.str_opt("out", f.out)) {
      io::write_file(*out, o.artifact);
      std::cout << o.summary << "\n";
    } else {
      std::cout << o.artifact;
      std::cerr << o.summary << "\n";
    }
    return o.status;
  } catch (const ConfigError& e) {
    emit_error("config_error", "cli", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    emit_error(to_string(e.code()), e.module(), e.what());
    const bool config = e.code() == ErrorCode::config_error || e.code() == ErrorCode::invalid_argument ||
                        e.code() == ErrorCode::io_error;
    return config ? kExitConfig : kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    emit_error("config_error", "cli", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    emit_error("internal_error", "cli", e.what());
    return kExitNumerical;
  }
}
