#include <benchmark/benchmark.h>

#include <cmath>

#include "pnspace/norms.hpp"
#include "pnspace/verify.hpp"

using namespace pnspace;

namespace {

GridFunction wave(const Grid& g) {
  return make_grid_function(g, [](double x, double y) {
    return 0.4 + std::sin(5.0 * x + 2.0 * y) * std::cos(3.0 * y);
  });
}

void BM_integrate_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid_2d(0.0, 1.0, n, 0.0, 1.0, n);
  const GridFunction u = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.node_count()));
}
BENCHMARK(BM_integrate_2d)->Arg(65)->Arg(257);

void BM_diff_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid_2d(0.0, 1.0, n, 0.0, 1.0, n);
  const GridFunction u = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(diff(u, 0));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.node_count()));
}
BENCHMARK(BM_diff_2d)->Arg(65)->Arg(257);

void BM_lebesgue_modular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid_1d(0.0, 1.0, n);
  const GridFunction u = wave(g);
  const ExponentField p = ExponentField::m0(make_grid_function(
      g, [](double x) { return 2.0 + 0.5 * std::sin(3.0 * x); }));
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_modular(u, p));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_lebesgue_modular)->Arg(257)->Arg(4097);

void BM_luxemburg_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid_1d(0.0, 1.0, n);
  const GridFunction u = wave(g);
  const ExponentField p = ExponentField::m0(make_grid_function(
      g, [](double x) { return 2.0 + 0.5 * std::sin(3.0 * x); }));
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(u, p).value);
}
BENCHMARK(BM_luxemburg_norm)->Arg(257)->Arg(4097);

void BM_pn_pseudonorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid_1d(0.0, 1.0, n);
  const GridFunction u = wave(g);
  const SpaceSpec spec = SpaceSpec::s1_var_theta(
      ExponentField::constant(g, 1.0), ExponentField::constant(g, 1.5),
      ExponentField::constant(g, 3.0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(pn_pseudonorm(u, spec).value);
}
BENCHMARK(BM_pn_pseudonorm)->Arg(257)->Arg(4097);

void BM_metric_var(benchmark::State& state) {
  const Grid g = make_grid_1d(0.0, 1.0, 257);
  const GridFunction u = wave(g);
  const GridFunction v = make_grid_function(
      g, [](double x) { return 0.2 + std::cos(4.0 * x); });
  const ExponentField gamma = ExponentField::constant(g, 1.0);
  const ExponentField beta = ExponentField::constant(g, 2.0);
  const ExponentField psi = psi_exponent(ExponentField::constant(g, 3.5),
                                         gamma, beta);
  for (auto _ : state)
    benchmark::DoNotOptimize(metric_var(u, v, gamma, beta, psi));
}
BENCHMARK(BM_metric_var);

void BM_fit_constants(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  std::vector<double> lhs;
  std::vector<std::vector<double>> terms;
  std::uint64_t s = 7;
  auto u01 = [&]() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  };
  for (int i = 0; i < rows; ++i) {
    terms.push_back({u01() * 4.0, u01() * 2.0, 1.0});
    lhs.push_back(u01() * 3.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_constants(lhs, terms));
}
BENCHMARK(BM_fit_constants)->Arg(100)->Arg(400);

void BM_check_2_1(benchmark::State& state) {
  const Grid g = make_grid_1d(0.0, 1.0, 257);
  FunctionFamily fam;
  fam.seed = 3;
  fam.count = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_2_1(fam, g, 1.0, 2.0).worst_margin);
}
BENCHMARK(BM_check_2_1)->Arg(25)->Arg(100);

void BM_expr_sample(benchmark::State& state) {
  const Grid g = make_grid_1d(0.0, 1.0, 4097);
  const expr::Expr e =
      expr::Expr::parse("spow(x, 1.5)*sin(3*x) + exp(-x)*max(x, 0.25)");
  for (auto _ : state) benchmark::DoNotOptimize(e.sample(g));
  state.SetItemsProcessed(state.iterations() * 4097);
}
BENCHMARK(BM_expr_sample);

} // namespace

BENCHMARK_MAIN();
