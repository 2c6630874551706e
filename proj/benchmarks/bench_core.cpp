#include <benchmark/benchmark.h>

#include <memory>

#include "beltrami/finite_type.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/jet.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"

namespace {

using namespace beltrami;

Jet sample_jet(int order) {
  const Jet s = Jet::variable_s(order, 0.7);
  const Jet t = Jet::variable_t(order, -0.4);
  return sin(s * 1.3 + t) + s * t * 0.25 + 2.0;
}

void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = sample_jet(order);
  const Jet b = sqrt(a + 3.0);
  for (auto _ : state) {
    Jet c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_JetMultiply)->Arg(4)->Arg(8)->Arg(12);

void BM_JetSqrt(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = sample_jet(order) + 4.0;
  for (auto _ : state) {
    Jet c = sqrt(a);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_JetSqrt)->Arg(4)->Arg(8)->Arg(12);

void BM_FundamentalForms(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const SurfaceSpec spec = SurfaceSpec::torus(2.0, 1.0);
  for (auto _ : state) {
    const JetVec3 x = evaluate_chart(spec, 0.8, 0.3, order);
    FormBundle fb = fundamental_forms(x);
    benchmark::DoNotOptimize(fb);
  }
}
BENCHMARK(BM_FundamentalForms)->Arg(4)->Arg(8);

void BM_BeltramiSecond(benchmark::State& state) {
  const SurfaceSpec spec = SurfaceSpec::helicoid(1.5);
  const JetVec3 x = evaluate_chart(spec, 0.4, -1.2, 8);
  const FormBundle fb = fundamental_forms(x);
  const ConnectionBundle cb = connections(fb, Form::II);
  for (auto _ : state) {
    JetVec3 out = beltrami_second(Form::II, fb.position, fb, cb);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_BeltramiSecond);

void BM_DetectorSphere(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  const SurfaceSpec spec = SurfaceSpec::sphere(1.0);
  for (auto _ : state) {
    const IterateTable table =
        build_iterates(spec, Form::II, FieldKind::Position, {4, 4}, kmax);
    FiniteTypeVerdict verdict = dependence_test(table, 1e-7, false);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_DetectorSphere)->Arg(2)->Arg(4);

void BM_RuledOperator(benchmark::State& state) {
  const SurfaceSpec spec = SurfaceSpec::helicoid(1.5);
  const auto inv = std::make_shared<const RuledInvariants>(
      ruled_invariants(spec.directrix(), spec.ruling(), 0.4, 12));
  const HalfPowerVec3 x = ruled_position_field(inv);
  for (auto _ : state) {
    HalfPowerVec3 out = delta2_ruled(x);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_RuledOperator);

} // namespace

BENCHMARK_MAIN();
