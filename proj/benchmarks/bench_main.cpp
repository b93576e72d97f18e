// Hot paths: theta sums, period quadrature, Abel map, one identity sample.

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "thetakit/kp.hpp"
#include "thetakit/theta.hpp"

using namespace thetakit;

namespace {

const Jacobian& genus2() {
  static const Jacobian J(HyperellipticCurve(fixtures::genus2()));
  return J;
}

void BM_Theta(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const RiemannMatrix& tau = genus2().tau();
  CVector z(2);
  z << cplx(0.31, -0.12), cplx(-0.07, 0.22);
  for (auto _ : state) benchmark::DoNotOptimize(theta(z, tau, Characteristic::zero(2), tol));
}
BENCHMARK(BM_Theta)->Arg(4)->Arg(8)->Arg(13);

void BM_ThetaJet(benchmark::State& state) {
  const RiemannMatrix& tau = genus2().tau();
  CVector z(2);
  z << cplx(0.31, -0.12), cplx(-0.07, 0.22);
  for (auto _ : state) benchmark::DoNotOptimize(theta_jet(z, tau, Characteristic::zero(2)));
}
BENCHMARK(BM_ThetaJet);

void BM_Periods(benchmark::State& state) {
  const HyperellipticCurve c(fixtures::genus2());
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_period_data(c, tol));
}
BENCHMARK(BM_Periods)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_AbelMapUncached(benchmark::State& state) {
  const Jacobian& J = genus2();
  const auto p = J.sample_regular_configuration(1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(J.abel_map_via(p, {}));
}
BENCHMARK(BM_AbelMapUncached)->Unit(benchmark::kMicrosecond);

void BM_AdditionFormulaSample(benchmark::State& state) {
  const PrimeForm E(genus2());
  const ThetaSetting s = ThetaSetting::standard(E);
  const SplitBundle M = SplitBundle::line(fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}));
  const auto samples = draw_samples(E, static_cast<int>(state.range(0)), 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(check_addition_formula(s, M, samples, 1e-8));
}
BENCHMARK(BM_AdditionFormulaSample)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_CoverConstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(DoubleCover(fixtures::cover_f1(), fixtures::cover_f2()));
}
BENCHMARK(BM_CoverConstruction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
