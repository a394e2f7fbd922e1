#include <benchmark/benchmark.h>

#include "rhop/dets.hpp"
#include "rhop/measures.hpp"
#include "rhop/opcircle.hpp"
#include "rhop/opline.hpp"
#include "rhop/rhp.hpp"
#include "rhop/toda.hpp"

using namespace rhop;

namespace {

const Weight& expcos() {
  static const Weight w = Weight::from_spec(parse_weight_spec("expcos:s=1"));
  return w;
}
const Weight& quartic() {
  static const Weight w = Weight::from_spec(parse_weight_spec("quartic:g=1,d=0"));
  return w;
}

void BM_CircleMoments(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(circle_moments<double>(expcos(), st.range(0)));
}
BENCHMARK(BM_CircleMoments)->Arg(16)->Arg(64)->Arg(256);

void BM_Levinson(benchmark::State& st) {
  const auto m = circle_moments<double>(expcos(), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verblunsky_levinson(m, st.range(0)));
}
BENCHMARK(BM_Levinson)->Arg(16)->Arg(32)->Arg(64);

void BM_LevinsonExtended(benchmark::State& st) {
  const auto m = circle_moments<extended>(expcos(), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verblunsky_levinson(m, st.range(0)));
}
BENCHMARK(BM_LevinsonExtended)->Arg(16)->Arg(32);

void BM_SchurGeronimus(benchmark::State& st) {
  const auto m = circle_moments<double>(expcos(), 2 * st.range(0) + 16);
  for (auto _ : st) benchmark::DoNotOptimize(schur_geronimus(m, st.range(0)));
}
BENCHMARK(BM_SchurGeronimus)->Arg(16)->Arg(64);

void BM_Stieltjes(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(recurrence_from_measure(quartic(), st.range(0)));
}
BENCHMARK(BM_Stieltjes)->Arg(10)->Arg(40);

void BM_TodaSpectral(benchmark::State& st) {
  const JacobiMatrix L0 = jacobi_from_recurrence(recurrence_from_measure(quartic(), st.range(0)), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(toda_flow_spectral(L0, 1.0));
}
BENCHMARK(BM_TodaSpectral)->Arg(5)->Arg(50);

void BM_TodaOde(benchmark::State& st) {
  const JacobiMatrix L0 = jacobi_from_recurrence(recurrence_from_measure(quartic(), st.range(0)), st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(toda_flow_ode(L0, 1.0));
}
BENCHMARK(BM_TodaOde)->Arg(5)->Arg(50);

void BM_CircleRhpSolve(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(solve_rhp_circle(expcos(), 10, st.range(0)));
}
BENCHMARK(BM_CircleRhpSolve)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AssembleX(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(assemble_X(quartic(), st.range(0)));
}
BENCHMARK(BM_AssembleX)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_OnePoint(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(one_point_fn(expcos(), st.range(0)));
}
BENCHMARK(BM_OnePoint)->Arg(4)->Arg(10);

void BM_RelativeLogdetCircle(benchmark::State& st) {
  RelDetJob job;
  job.contour = Contour::circle;
  job.omega1 = expcos();
  job.omega2 = Weight::constant(Contour::circle, 1.0);
  job.n = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(relative_logdet(job));
}
BENCHMARK(BM_RelativeLogdetCircle)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SzegoTable(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(szego_table(1.0, 1, st.range(0)));
}
BENCHMARK(BM_SzegoTable)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
