// Serial reference vs OpenMP kernel for the two enumeration hot spots.

#include <benchmark/benchmark.h>

#include <memory>

#include "simctx/polytope.hpp"
#include "simctx/sset.hpp"

using namespace simctx;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_DetMapsChsh(benchmark::State& state) {
  const SSet2 x = build_standard(StandardSpace::ChshCone);
  const Target t = Target::nerve(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_det_maps(x, t, mode(state)));
}
BENCHMARK(BM_DetMapsChsh)->ArgsProduct({{0, 1}, {2, 5, 8}})->ArgNames({"parallel", "d"});

void BM_DetMapsPrism(benchmark::State& state) {
  const SSet2 x = prism(build_standard(StandardSpace::TwoEdgeLoop)).space;
  const Target t = Target::nerve(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_det_maps(x, t, mode(state)));
}
BENCHMARK(BM_DetMapsPrism)->ArgsProduct({{0, 1}, {3, 6}})->ArgNames({"parallel", "d"});

void BM_VerticesChsh(benchmark::State& state) {
  DistributionPolytope poly(std::make_shared<const SSet2>(build_standard(StandardSpace::ChshCone)), Target::nerve(2));
  VertexOptions o;
  o.exec = mode(state);
  o.analyze = false;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(poly, o));
}
BENCHMARK(BM_VerticesChsh)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_VerticesTriangleZ3(benchmark::State& state) {
  DistributionPolytope poly(std::make_shared<const SSet2>(build_standard(StandardSpace::GluedTriangle)), Target::nerve(3));
  VertexOptions o;
  o.exec = mode(state);
  o.analyze = false;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(poly, o));
}
BENCHMARK(BM_VerticesTriangleZ3)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
