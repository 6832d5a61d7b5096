// Microbenchmarks for the hot paths: the reflection formula, the synthetic
// oracle, surrogate forward/backward passes, the designer loss, and the
// far-field sweep.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "risopt/designer.hpp"
#include "risopt/farfield.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"
#include "risopt/surrogate.hpp"

namespace {

using namespace risopt;

void bm_s11_from_network(benchmark::State& state) {
  const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
      {0.7, 58.0}, {0.0, 35.0}, {0.05, -12.0}, 2.5);
  const Complex za{0.3, -11.0};
  for (auto _ : state) benchmark::DoNotOptimize(s11_from_network(z, za));
}
BENCHMARK(bm_s11_from_network);

void bm_synth_impedance(benchmark::State& state) {
  const OracleConfig cfg;
  const GeometryParams g = GeometryBounds{}.center();
  for (auto _ : state)
    benchmark::DoNotOptimize(synth_impedance(cfg, g, 3.1));
}
BENCHMARK(bm_synth_impedance);

SurrogateModel bench_model() {
  SurrogateModel model = make_mlp(7, 30, 8, 1);
  const GeometryBounds box;
  model.input_norm.lo.assign(box.lo.begin(), box.lo.end());
  model.input_norm.hi.assign(box.hi.begin(), box.hi.end());
  model.input_norm.lo.push_back(2.0);
  model.input_norm.hi.push_back(4.0);
  model.output_norm.mean.assign(8, 0.0);
  model.output_norm.scale.assign(8, 1.0);
  return model;
}

void bm_mlp_forward(benchmark::State& state) {
  const SurrogateModel model = bench_model();
  const std::vector<double> input{15.0, 15.0, 15.0, 2.0, 0.55, 7.0, 3.1};
  for (auto _ : state) benchmark::DoNotOptimize(mlp_forward(model, input));
}
BENCHMARK(bm_mlp_forward);

void bm_mlp_gradient(benchmark::State& state) {
  const SurrogateModel model = make_mlp(7, 30, 8, 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Batch batch;
  batch.inputs.resize(64, 7);
  batch.targets.resize(64, 8);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 7; ++c) batch.inputs(r, c) = unit(rng);
    for (int c = 0; c < 8; ++c) batch.targets(r, c) = unit(rng) - 0.5;
  }
  for (auto _ : state) benchmark::DoNotOptimize(mlp_gradient(model, batch));
}
BENCHMARK(bm_mlp_gradient);

void bm_evaluate_loss(benchmark::State& state) {
  const ImpedanceFn fn = make_oracle_predictor(OracleConfig{});
  DesignSpec spec;
  spec.freq_ghz = 3.0;
  const PhaseSchedule schedule = PhaseSchedule::full(3);
  const std::vector<double> caps{2.6, 1.9, 1.6, 1.4, 1.2, 1.0, 0.8, 0.7};
  const GeometryParams g = GeometryBounds{}.center();
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_loss(fn, g, caps, schedule, spec));
}
BENCHMARK(bm_evaluate_loss);

void bm_pattern_sweep(benchmark::State& state) {
  const ArrayGeometry geom;
  const CodingSequence code = CodingSequence::parse("1111333355557777");
  const auto grid = uniform_theta_grid(-90.0, 90.0, 0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(pattern_sweep(geom, code, grid));
}
BENCHMARK(bm_pattern_sweep);

}  // namespace

BENCHMARK_MAIN();
