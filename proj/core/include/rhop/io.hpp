#pragma once

#include <string>
#include <string_view>

#include "rhop/dets.hpp"
#include "rhop/measures.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"
#include "rhop/rhp.hpp"

// CSV and JSON artifacts.  Doubles are written in shortest round-trip form,
// so parse(write(x)) reproduces x bit for bit.

namespace rhop::io {

/// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

// CSV ----------------------------------------------------------------------

/// k,re,im for k = 0..order.
std::string circle_moments_csv(const CircleMoments<double>& m);
CircleMoments<double> parse_circle_moments_csv(std::string_view text);

/// j,m
std::string line_moments_csv(const LineMoments<double>& m);
LineMoments<double> parse_line_moments_csv(std::string_view text);

/// n,a,b,k; b is empty on the last row.
std::string recurrence_csv(const RecurrenceLine& r);
RecurrenceLine parse_recurrence_csv(std::string_view text);

/// atom,weight
std::string measure_csv(const DiscreteMeasure& m);
DiscreteMeasure parse_measure_csv(std::string_view text);

/// n,re,im,rho,kappa; the last row carries only kappa_N.
std::string verblunsky_csv(const VerblunskySeq& v);
VerblunskySeq parse_verblunsky_csv(std::string_view text);

/// j,k,err
std::string decay_csv(const DecayReport& d);
std::vector<DecayEntry> parse_decay_csv(std::string_view text);

/// point,R,cd
std::string one_point_csv(const OnePointFunction& f);
OnePointFunction parse_one_point_csv(std::string_view text);

// JSON ---------------------------------------------------------------------

std::string jacobi_json(const JacobiMatrix& L);
JacobiMatrix parse_jacobi_json(std::string_view text);

/// {n, bands}: diagonals -2..2 as [re, im] pairs.
std::string cmv_json(const CMVMatrix& C);
CMVMatrix parse_cmv_json(std::string_view text);

std::string wall_json(const WallReport& w);
WallReport parse_wall_json(std::string_view text);

/// The data of an RHSolution that survives serialization.
struct RHSummary {
  Contour contour = Contour::line;
  std::size_t n = 0;
  Mat2 residue_or_value = Mat2::Zero();
  cplx alpha = 0.0;
  double kappa2 = 0.0;
  double jump_residual = -1.0;
  double det_residual = -1.0;
  double normalization_residual = -1.0;
};
RHSummary summarize(const RHSolution& s);
std::string rh_solution_json(const RHSummary& s);
RHSummary parse_rh_solution_json(std::string_view text);

std::string det_report_json(const DetReport& r);
DetReport parse_det_report_json(std::string_view text);

std::string szego_json(const SzegoTable& t);
SzegoTable parse_szego_json(std::string_view text);

std::string hankel_limit_json(const HankelLimitTable& t);
HankelLimitTable parse_hankel_limit_json(std::string_view text);

// Files --------------------------------------------------------------------

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace rhop::io
