#include <benchmark/benchmark.h>

#include "stlf/envs/builtin_specs.hpp"
#include "stlf/stl/parser.hpp"

using namespace stlf;

namespace {

void BM_ParseCorpus(benchmark::State& state) {
  std::vector<std::string> texts;
  for (TaskId id : kAllTasks) {
    for (auto kind : {envs::SpecKind::Success, envs::SpecKind::Danger}) texts.emplace_back(envs::builtin_spec_text(id, kind));
  }
  for (auto _ : state) {
    for (const auto& t : texts) benchmark::DoNotOptimize(stl::parse(t));
  }
}
BENCHMARK(BM_ParseCorpus);

void BM_PrintCorpus(benchmark::State& state) {
  std::vector<stl::Formula> formulas;
  for (TaskId id : kAllTasks) {
    for (auto kind : {envs::SpecKind::Success, envs::SpecKind::Danger}) formulas.push_back(envs::builtin_spec(id, kind));
  }
  for (auto _ : state) {
    for (const auto& f : formulas) benchmark::DoNotOptimize(stl::print(f));
  }
}
BENCHMARK(BM_PrintCorpus);

}  // namespace
