#include "rhop/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rhop::io {

namespace {

using nlohmann::json;

const char* kModule = "io";

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::io_error, kModule, msg); }

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) fail("bad number '" + std::string(s) + "'");
  return v;
}

std::size_t parse_index(std::string_view s) {
  std::size_t v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) fail("bad index '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Rows of a CSV with a fixed header; every row must have the header's width.
std::vector<std::vector<std::string_view>> read_csv(std::string_view text, std::string_view header) {
  std::vector<std::vector<std::string_view>> rows;
  bool seen_header = false;
  const std::size_t width = split(header, ',').size();
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) fail("expected CSV header '" + std::string(header) + "', got '" + std::string(line) + "'");
      seen_header = true;
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() != width) fail("CSV row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(width));
    rows.push_back(std::move(cells));
  }
  if (!seen_header) fail("empty CSV");
  return rows;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::string_view header) { out_ << header << '\n'; }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(const std::string& x) { return x; }
  std::ostringstream out_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }
cplx complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("bad JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(std::string("unexpected JSON layout: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) fail("cannot format number");
  return std::string(buf, p);
}

// CSV ----------------------------------------------------------------------

std::string circle_moments_csv(const CircleMoments<double>& m) {
  CsvWriter w("k,re,im");
  for (std::size_t k = 0; k < m.mu.size(); ++k) w.row(k, m.mu[k].real(), m.mu[k].imag());
  return w.str();
}

CircleMoments<double> parse_circle_moments_csv(std::string_view text) {
  CircleMoments<double> m;
  for (const auto& r : read_csv(text, "k,re,im")) {
    if (parse_index(r[0]) != m.mu.size()) fail("moment rows must be consecutive from k = 0");
    m.mu.emplace_back(parse_double(r[1]), parse_double(r[2]));
  }
  return m;
}

std::string line_moments_csv(const LineMoments<double>& m) {
  CsvWriter w("j,m");
  for (std::size_t j = 0; j < m.m.size(); ++j) w.row(j, m.m[j]);
  return w.str();
}

LineMoments<double> parse_line_moments_csv(std::string_view text) {
  LineMoments<double> m;
  for (const auto& r : read_csv(text, "j,m")) {
    if (parse_index(r[0]) != m.m.size()) fail("moment rows must be consecutive from j = 0");
    m.m.push_back(parse_double(r[1]));
  }
  return m;
}

std::string recurrence_csv(const RecurrenceLine& rec) {
  CsvWriter w("n,a,b,k");
  for (std::size_t n = 0; n < rec.a.size(); ++n) {
    w.row(n, rec.a[n], n < rec.b.size() ? format_double(rec.b[n]) : std::string(), rec.k[n]);
  }
  return w.str();
}

RecurrenceLine parse_recurrence_csv(std::string_view text) {
  RecurrenceLine rec;
  for (const auto& r : read_csv(text, "n,a,b,k")) {
    if (parse_index(r[0]) != rec.a.size()) fail("recurrence rows must be consecutive from n = 0");
    rec.a.push_back(parse_double(r[1]));
    if (!r[2].empty()) rec.b.push_back(parse_double(r[2]));
    rec.k.push_back(parse_double(r[3]));
  }
  if (!rec.a.empty() && rec.b.size() + 1 != rec.a.size()) fail("b must be missing on the last row only");
  return rec;
}

std::string measure_csv(const DiscreteMeasure& m) {
  CsvWriter w("atom,weight");
  for (std::size_t i = 0; i < m.atoms.size(); ++i) w.row(m.atoms[i], m.weights[i]);
  return w.str();
}

DiscreteMeasure parse_measure_csv(std::string_view text) {
  DiscreteMeasure m;
  for (const auto& r : read_csv(text, "atom,weight")) {
    m.atoms.push_back(parse_double(r[0]));
    m.weights.push_back(parse_double(r[1]));
  }
  return m;
}

std::string verblunsky_csv(const VerblunskySeq& v) {
  CsvWriter w("n,re,im,rho,kappa");
  for (std::size_t n = 0; n < v.alpha.size(); ++n) w.row(n, v.alpha[n].real(), v.alpha[n].imag(), v.rho[n], v.kappa[n]);
  if (v.kappa.size() > v.alpha.size()) {
    const std::size_t N = v.alpha.size();
    w.row(N, std::string(), std::string(), std::string(), v.kappa[N]);
  }
  return w.str();
}

VerblunskySeq parse_verblunsky_csv(std::string_view text) {
  VerblunskySeq v;
  bool closed = false;
  for (const auto& r : read_csv(text, "n,re,im,rho,kappa")) {
    if (closed) fail("rows after the closing kappa row");
    if (parse_index(r[0]) != v.kappa.size()) fail("Verblunsky rows must be consecutive from n = 0");
    if (r[1].empty()) {
      closed = true;
    } else {
      v.alpha.emplace_back(parse_double(r[1]), parse_double(r[2]));
      v.rho.push_back(parse_double(r[3]));
    }
    v.kappa.push_back(parse_double(r[4]));
  }
  return v;
}

std::string decay_csv(const DecayReport& d) {
  CsvWriter w("j,k,err");
  for (const auto& e : d.entries) w.row(e.j, e.k, e.err);
  return w.str();
}

std::vector<DecayEntry> parse_decay_csv(std::string_view text) {
  std::vector<DecayEntry> out;
  for (const auto& r : read_csv(text, "j,k,err")) out.push_back({parse_index(r[0]), parse_index(r[1]), parse_double(r[2])});
  return out;
}

std::string one_point_csv(const OnePointFunction& f) {
  CsvWriter w(f.contour == Contour::circle ? "theta,R,cd" : "x,R,cd");
  for (std::size_t i = 0; i < f.points.size(); ++i) w.row(f.points[i], f.values[i], f.cd_sum[i]);
  return w.str();
}

OnePointFunction parse_one_point_csv(std::string_view text) {
  OnePointFunction f;
  const bool circle = text.starts_with("theta,");
  f.contour = circle ? Contour::circle : Contour::line;
  for (const auto& r : read_csv(text, circle ? "theta,R,cd" : "x,R,cd")) {
    f.points.push_back(parse_double(r[0]));
    f.values.push_back(parse_double(r[1]));
    f.cd_sum.push_back(parse_double(r[2]));
  }
  return f;
}

// JSON ---------------------------------------------------------------------

std::string jacobi_json(const JacobiMatrix& L) {
  return dump({{"n", L.size()}, {"diag", L.diag}, {"offdiag", L.offdiag}});
}

JacobiMatrix parse_jacobi_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    JacobiMatrix L;
    L.diag = j.at("diag").get<std::vector<double>>();
    L.offdiag = j.at("offdiag").get<std::vector<double>>();
    if (j.at("n").get<std::size_t>() != L.diag.size()) fail("Jacobi n does not match diag length");
    return L;
  });
}

std::string cmv_json(const CMVMatrix& C) {
  json bands = json::array();
  for (const auto& band : C.bands()) {
    json b = json::array();
    for (const cplx& z : band) b.push_back(complex_json(z));
    bands.push_back(b);
  }
  return dump({{"n", C.size()}, {"bands", bands}});
}

CMVMatrix parse_cmv_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    const auto N = j.at("n").get<Eigen::Index>();
    const json& bands = j.at("bands");
    if (bands.size() != 5) fail("CMV JSON needs 5 bands");
    CMVMatrix C;
    C.C = Eigen::MatrixXcd::Zero(N, N);
    for (int off = -2; off <= 2; ++off) {
      const json& b = bands.at(static_cast<std::size_t>(off + 2));
      std::size_t idx = 0;
      for (Eigen::Index i = 0; i < N; ++i) {
        const Eigen::Index col = i + off;
        if (col < 0 || col >= N) continue;
        C.C(i, col) = complex_from(b.at(idx++));
      }
      if (idx != b.size()) fail("CMV band length mismatch");
    }
    return C;
  });
}

std::string wall_json(const WallReport& w) {
  json A = json::array(), B = json::array();
  for (const cplx& z : w.pair.A) A.push_back(complex_json(z));
  for (const cplx& z : w.pair.B) B.push_back(complex_json(z));
  return dump({{"n", w.pair.n},
               {"A", A},
               {"B", B},
               {"residual_star", w.residual_star},
               {"residual", w.residual}});
}

WallReport parse_wall_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    WallReport w;
    w.pair.n = j.at("n").get<std::size_t>();
    for (const auto& z : j.at("A")) w.pair.A.push_back(complex_from(z));
    for (const auto& z : j.at("B")) w.pair.B.push_back(complex_from(z));
    w.residual_star = j.at("residual_star").get<double>();
    w.residual = j.at("residual").get<double>();
    return w;
  });
}

RHSummary summarize(const RHSolution& s) {
  RHSummary r;
  r.contour = s.contour;
  r.n = s.n;
  r.residue_or_value = s.residue_or_value;
  r.alpha = s.alpha;
  r.kappa2 = s.kappa2;
  r.jump_residual = s.jump_residual;
  r.det_residual = s.det_residual;
  r.normalization_residual = s.normalization_residual;
  return r;
}

std::string rh_solution_json(const RHSummary& s) {
  json m = json::array();
  for (int i = 0; i < 2; ++i) {
    m.push_back(json::array({complex_json(s.residue_or_value(i, 0)), complex_json(s.residue_or_value(i, 1))}));
  }
  json a = {{"matrix", m}, {"kappa2", s.kappa2}};
  if (s.contour == Contour::circle) a["alpha"] = complex_json(s.alpha);
  return dump({{"contour", std::string(to_string(s.contour))},
               {"n", s.n},
               {"alpha_or_residues", a},
               {"jump_residual", s.jump_residual},
               {"det_residual", s.det_residual},
               {"normalization_residual", s.normalization_residual}});
}

RHSummary parse_rh_solution_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    RHSummary s;
    const auto c = j.at("contour").get<std::string>();
    if (c != "line" && c != "circle") fail("unknown contour '" + c + "'");
    s.contour = c == "line" ? Contour::line : Contour::circle;
    s.n = j.at("n").get<std::size_t>();
    const json& a = j.at("alpha_or_residues");
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) s.residue_or_value(i, k) = complex_from(a.at("matrix").at(i).at(k));
    s.kappa2 = a.at("kappa2").get<double>();
    if (a.contains("alpha")) s.alpha = complex_from(a.at("alpha"));
    s.jump_residual = j.at("jump_residual").get<double>();
    s.det_residual = j.at("det_residual").get<double>();
    s.normalization_residual = j.at("normalization_residual").get<double>();
    return s;
  });
}

std::string det_report_json(const DetReport& r) {
  return dump({{"n", r.n},
               {"lhs", r.lhs},
               {"rhs", r.rhs},
               {"abs_err", r.abs_err},
               {"rel_err", r.rel_err},
               {"nodes", r.nodes}});
}

DetReport parse_det_report_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    DetReport r;
    r.n = j.at("n").get<std::size_t>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.abs_err = j.at("abs_err").get<double>();
    r.rel_err = j.at("rel_err").get<double>();
    r.nodes = j.at("nodes").get<std::size_t>();
    return r;
  });
}

std::string szego_json(const SzegoTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"measured", r.measured}, {"abs_err", r.abs_err}});
  json j = {{"s", t.s}, {"prediction", t.prediction}, {"monotone", t.monotone},
            {"monotone_from", t.n_monotone_from}, {"table", rows}};
  if (!t.rows.empty()) {
    j["n"] = t.rows.back().n;
    j["measured"] = t.rows.back().measured;
    j["abs_err"] = t.rows.back().abs_err;
  }
  return dump(j);
}

SzegoTable parse_szego_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    SzegoTable t;
    t.s = j.at("s").get<double>();
    t.prediction = j.at("prediction").get<double>();
    t.monotone = j.at("monotone").get<bool>();
    t.n_monotone_from = j.at("monotone_from").get<std::size_t>();
    for (const auto& r : j.at("table")) {
      t.rows.push_back({r.at("n").get<std::size_t>(), r.at("measured").get<double>(), r.at("abs_err").get<double>()});
    }
    return t;
  });
}

std::string hankel_limit_json(const HankelLimitTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"diff", r.diff}});
  return dump({{"log_integral", t.log_integral},
               {"fhat_term", t.fhat_term},
               {"decreasing", t.decreasing},
               {"table", rows}});
}

HankelLimitTable parse_hankel_limit_json(std::string_view text) {
  const json j = parse_json(text);
  return guarded([&] {
    HankelLimitTable t;
    t.log_integral = j.at("log_integral").get<double>();
    t.fhat_term = j.at("fhat_term").get<double>();
    t.decreasing = j.at("decreasing").get<bool>();
    for (const auto& r : j.at("table")) {
      t.rows.push_back({r.at("n").get<std::size_t>(), r.at("lhs").get<double>(), r.at("rhs").get<double>(),
                        r.at("diff").get<double>()});
    }
    return t;
  });
}

// Files --------------------------------------------------------------------

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace rhop::io
