// Serial reference against the OpenMP path for the kernels that fan out
// over independent items. Argument 0 runs Exec::serial, 1 Exec::parallel.

#include "relfan/classifying.hpp"
#include "relfan/fan_checks.hpp"
#include "relfan/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace relfan;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

const SigmaThreeParams& params_d() {
  static const SigmaThreeParams p = default_params(make_gspace(ExtensionFrame(fixtures::fix_d())));
  return p;
}

const SigmaThreeParams& params_a() {
  static const SigmaThreeParams p = default_params(make_gspace(ExtensionFrame(fixtures::fix_a())));
  return p;
}

const WindowSpec kWindowD{3, {Vec{Rat(0), Rat(0), Rat(0)}, Vec{Rat(0), Rat(1, 2), Rat(0)}}};

void BM_CheckFan(benchmark::State& state) {
  const FiniteFan fan = SigmaThreeFan(params_d()).window(kWindowD);
  for (auto _ : state) benchmark::DoNotOptimize(check_fan(fan, exec_of(state)).ok);
}

void BM_RelativeCompleteness(benchmark::State& state) {
  const SigmaThreeFan fan(params_a());
  const auto corpus = make_corpus(params_a(), 200, 7);
  for (auto _ : state) benchmark::DoNotOptimize(relative_completeness(fan, corpus, exec_of(state)).size());
}

void BM_AdActionCheck(benchmark::State& state) {
  const SigmaThreeFan fan(params_d());
  const auto gens = gamma_generators(params_d().gs->frame(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ad_action_check(fan, gens, kWindowD, exec_of(state)).status);
}

void BM_NilpotentOrbit(benchmark::State& state) {
  const ExtensionFrame f(fixtures::fix_a());
  const Cone cone = Cone::from_generators(make_gspace(f), {f.lift(Vec{Rat(0), Rat(0)}), f.lift(Vec{Rat(1), Rat(0)})});
  const PeriodPoint pt = PeriodPoint::split(f, {{0, {{GaussRat(Rat(0), Rat(-5)), GaussRat(1)}}}});
  std::vector<long> samples;
  for (long y = 1; y <= 12; ++y) samples.push_back(y * y);
  for (auto _ : state)
    benchmark::DoNotOptimize(nilpotent_orbit_test(pt, cone, samples, 1, exec_of(state)).sampled_pass);
}

}  // namespace

BENCHMARK(BM_CheckFan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RelativeCompleteness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdActionCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NilpotentOrbit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
