#include <benchmark/benchmark.h>

#include "stlf/envs/surrogate.hpp"
#include "stlf/falsify/falsify.hpp"

using namespace stlf;

namespace {

InputVector box_centre(const Box& box) {
  InputVector x;
  for (const auto& d : box.dims()) x.values.push_back(0.5 * (d.lo + d.hi));
  return x;
}

void BM_SimulateAndMonitor(benchmark::State& state) {
  const TaskId id = kAllTasks[static_cast<std::size_t>(state.range(0))];
  auto env = envs::make_env(id, envs::default_controller(id), {}, envs::NoiseSpec{0.25});
  const InputVector x = box_centre(env->task().input_box);
  const auto& phi = *env->task().success_spec;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(falsify::monitor(*env, phi, env->simulate(x, seed++)));
  state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_SimulateAndMonitor)->DenseRange(0, 7);

}  // namespace
