#include <cmath>
#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "rhop/io.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"

using namespace rhop;

TEST(Format, ShortestRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Csv, RecurrenceRoundTrip) {
  const RecurrenceLine r = recurrence_from_measure(parse_weight_spec("gauss"), 6);
  const std::string text = io::recurrence_csv(r);
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,a,b,k");
  const RecurrenceLine back = io::parse_recurrence_csv(text);
  EXPECT_EQ(back.a, r.a);
  EXPECT_EQ(back.b, r.b);
  EXPECT_EQ(back.k, r.k);
  EXPECT_EQ(io::recurrence_csv(back), text);
}

TEST(Csv, VerblunskyRoundTrip) {
  const VerblunskySeq v = verblunsky_from_alpha({{0.5, 0.1}, {-0.2, 0.3}, {0.0, -0.4}});
  const VerblunskySeq back = io::parse_verblunsky_csv(io::verblunsky_csv(v));
  EXPECT_EQ(back.alpha, v.alpha);
  EXPECT_EQ(back.kappa, v.kappa);
}

TEST(Csv, MomentsAndMeasureRoundTrip) {
  const auto cm = circle_moments<double>(Weight::from_spec(parse_weight_spec("expcos:s=1")), 5);
  EXPECT_EQ(io::parse_circle_moments_csv(io::circle_moments_csv(cm)).mu, cm.mu);
  const auto lm = line_moments<double>(Weight::from_spec(parse_weight_spec("gauss")), 5);
  EXPECT_EQ(io::parse_line_moments_csv(io::line_moments_csv(lm)).m, lm.m);
  const DiscreteMeasure mu{{-1.0, 0.25, 2.0}, {0.2, 0.5, 0.3}};
  const DiscreteMeasure back = io::parse_measure_csv(io::measure_csv(mu));
  EXPECT_EQ(back.atoms, mu.atoms);
  EXPECT_EQ(back.weights, mu.weights);
}

TEST(Csv, MalformedInputIsRejected) {
  EXPECT_THROW(io::parse_recurrence_csv("n,a,b,k\n0,zz,1,1\n"), Error);
  EXPECT_THROW(io::parse_line_moments_csv("wrong,header\n"), Error);
}

TEST(Json, JacobiCmvWallRoundTrip) {
  const JacobiMatrix L{{0.1, 0.2, 0.3}, {1.0, 0.5}};
  const JacobiMatrix Lb = io::parse_jacobi_json(io::jacobi_json(L));
  EXPECT_EQ(Lb.diag, L.diag);
  EXPECT_EQ(Lb.offdiag, L.offdiag);

  const VerblunskySeq v = verblunsky_from_alpha({{0.3, 0.1}, {-0.2, 0.0}, {0.1, 0.4}, {0.0, 0.2}});
  const CMVMatrix C = cmv_build(v, 4);
  EXPECT_EQ((io::parse_cmv_json(io::cmv_json(C)).C - C.C).cwiseAbs().maxCoeff(), 0.0);

  const WallReport w = wall_pinter_nevai(v, 4);
  const WallReport wb = io::parse_wall_json(io::wall_json(w));
  EXPECT_EQ(wb.pair.A, w.pair.A);
  EXPECT_EQ(wb.pair.B, w.pair.B);
  EXPECT_EQ(wb.residual, w.residual);
}

TEST(Json, ReportsRoundTrip) {
  const DetReport r{6, 0.9, 0.9000001, 1e-7, 1.1e-7, 24};
  const DetReport rb = io::parse_det_report_json(io::det_report_json(r));
  EXPECT_EQ(rb.lhs, r.lhs);
  EXPECT_EQ(rb.rhs, r.rhs);
  EXPECT_EQ(rb.nodes, r.nodes);

  SzegoTable t;
  t.s = 1.0;
  t.prediction = 0.25;
  t.rows = {{1, 0.2, 0.05}, {2, 0.24, 0.01}};
  t.monotone = true;
  const SzegoTable tb = io::parse_szego_json(io::szego_json(t));
  ASSERT_EQ(tb.rows.size(), 2u);
  EXPECT_EQ(tb.rows[1].measured, 0.24);
  EXPECT_TRUE(tb.monotone);
}

TEST(Files, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "rhop_io_test.txt";
  io::write_file(path.string(), "a,b\n1,2\n");
  EXPECT_EQ(io::read_file(path.string()), "a,b\n1,2\n");
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file("/nonexistent/dir/file"), Error);
}
