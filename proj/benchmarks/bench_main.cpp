#include <benchmark/benchmark.h>

#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "calcverify/calcverify.hpp"

namespace cv = calcverify;

static void BM_GaussRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cv::gauss_rule(n));
}
BENCHMARK(BM_GaussRule)->Arg(5)->Arg(20)->Arg(64);

static void BM_LegendreGramSchmidt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cv::legendre_gram_schmidt(n));
}
BENCHMARK(BM_LegendreGramSchmidt)->Arg(12)->Arg(32);

static void BM_Integrate1D(benchmark::State& state) {
  const auto rule = cv::gauss_rule(static_cast<int>(state.range(0)));
  const auto f = [](double x) { return std::exp(-x * x); };
  for (auto _ : state) benchmark::DoNotOptimize(cv::integrate_1d(f, 0.0, 2.0, rule));
}
BENCHMARK(BM_Integrate1D)->Arg(8)->Arg(64);

static void BM_IntegrateBox(benchmark::State& state) {
  const int dims = static_cast<int>(state.range(0));
  const cv::Box box(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
  const auto rule = cv::gauss_rule(10);
  const auto f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::exp(-s);
  };
  for (auto _ : state) benchmark::DoNotOptimize(cv::integrate_box(f, box, rule));
}
BENCHMARK(BM_IntegrateBox)->DenseRange(1, 3);

static void BM_CordicSinCos(benchmark::State& state) {
  const auto table = cv::cordic_table(static_cast<int>(state.range(0)));
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cv::cordic_sincos(theta, table));
    theta += 0.37;
    if (theta > 100.0) theta = 0.1;
  }
}
BENCHMARK(BM_CordicSinCos)->Arg(20)->Arg(40);

static void BM_ExprParse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cv::parse("sin(x)*exp(-x^2) + ln(1 + y^2)/(2*x - y)", {"x", "y"}));
}
BENCHMARK(BM_ExprParse);

static void BM_ExprEvaluate(benchmark::State& state) {
  const auto e = cv::parse("sin(x)*exp(-x^2) + ln(1 + y^2)/(2*x - y)", {"x", "y"});
  const std::vector<double> v{0.7, -1.3};
  for (auto _ : state) benchmark::DoNotOptimize(cv::evaluate(e, v));
}
BENCHMARK(BM_ExprEvaluate);

static void BM_RuleCacheWarm(benchmark::State& state) {
  const auto path = std::filesystem::temp_directory_path() / "calcverify_bench_rules.txt";
  std::filesystem::remove(path);
  cv::RuleCache cache(path);
  for (int n = 1; n <= 20; ++n) cache.get_or_build(n);
  for (auto _ : state) benchmark::DoNotOptimize(cache.get_or_build(20));
  std::filesystem::remove(path);
}
BENCHMARK(BM_RuleCacheWarm);

static void BM_NewtonSqrt2(benchmark::State& state) {
  const auto f = [](double x) { return x * x; };
  const auto fp = [](double x) { return 2.0 * x; };
  for (auto _ : state) benchmark::DoNotOptimize(cv::newton_solve(f, fp, 2.0, 1.0));
}
BENCHMARK(BM_NewtonSqrt2);
BENCHMARK_MAIN();
