// Serial reference vs OpenMP path for the data-parallel kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cohesive/kernels.hpp"
#include "cohesive/laminate.hpp"
#include "cohesive/pathsim.hpp"
#include "cohesive/validate.hpp"

using namespace cohesive;

namespace {

const LoadingDensity& density() {
  static const LoadingDensity d = case_density(case_setup(1), CouplingMode::Potential);
  return d;
}

void batch(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Vec2> y(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = {static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2};
    z[i] = {static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2, static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2};
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(density(), y, z, exec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void validation(benchmark::State& state, Exec exec) {
  ValidationGrid g;
  g.exec = exec;
  const MixedModeLaw law = make_law(density());
  for (auto _ : state) benchmark::DoNotOptimize(validate_law(law, g));
}

void assembly(benchmark::State& state, Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const Mesh m = make_rect_mesh(4 * n, n, 0, 4, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(m, {1.0, 1.0}, exec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m.tris.size()));
}

void energetic_step(benchmark::State& state, Exec exec) {
  const auto psi = CohesiveLaw1D::ppr_intrinsic(2.0, 0.05, 0.2, 0.0005);
  LaminateProblem p;
  p.layer1 = {0.0, 100.0};
  p.layer2 = {400.0, 100.0};
  p.program = {{0.0, {0.0, 0.0}}, {1.0, {0.4, 0.0}}};
  p.law = make_law(LoadingDensity({0.0005, 0.0005, 0.0, CouplingMode::Potential}, psi, psi));
  p.solver.exec = exec;
  const LaminateModel model(p);
  const QuasistaticState s0 = model.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(model.energetic_step(s0, 0.5));
}

}  // namespace

BENCHMARK_CAPTURE(batch, serial, Exec::Serial)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(batch, parallel, Exec::Parallel)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(validation, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(validation, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(assembly, serial, Exec::Serial)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(assembly, parallel, Exec::Parallel)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(energetic_step, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(energetic_step, parallel, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
