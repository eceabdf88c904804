#include <benchmark/benchmark.h>

#include "paf/flow.hpp"
#include "paf/labeling.hpp"
#include "paf/scenario.hpp"

namespace {

paf::FlowProblem lines_problem(paf::Index side) {
  const paf::Scenario s = paf::gen_scenario("lines5x5-like", side, side, 0.1, 1);
  const paf::GridGraph g = paf::make_grid(side, side);
  return paf::FlowProblem(g, paf::build_adjacency(s.dictionary, paf::BinarySimilarity{}),
                          paf::initialize(paf::smooth_labels(s.noisy, 0.5), s.dictionary, g));
}

void BM_EuclideanGradient(benchmark::State& state) {
  const paf::FlowProblem problem = lines_problem(state.range(0));
  const paf::Matrix p = problem.initial().matrix();
  for (auto _ : state) benchmark::DoNotOptimize(paf::euclidean_gradient(problem, p));
  state.SetItemsProcessed(state.iterations() * p.size());
}
BENCHMARK(BM_EuclideanGradient)->Arg(16)->Arg(64)->Arg(256);

void BM_Objective(benchmark::State& state) {
  const paf::FlowProblem problem = lines_problem(state.range(0));
  const paf::Matrix p = problem.initial().matrix();
  for (auto _ : state) benchmark::DoNotOptimize(paf::objective(problem, p));
}
BENCHMARK(BM_Objective)->Arg(16)->Arg(64)->Arg(256);

void BM_IntegrateSteps(benchmark::State& state) {
  const paf::FlowProblem problem = lines_problem(state.range(0));
  paf::FlowConfig config;
  config.max_steps = 100;
  config.convergence_tol = 1.0;
  config.stall_tol = 1e-300;
  config.record_every = 100;
  for (auto _ : state) benchmark::DoNotOptimize(paf::integrate(problem, config));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_IntegrateSteps)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LinesToConvergence(benchmark::State& state) {
  const paf::FlowProblem problem = lines_problem(16);
  for (auto _ : state) benchmark::DoNotOptimize(paf::integrate(problem, paf::FlowConfig{}));
}
BENCHMARK(BM_LinesToConvergence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
