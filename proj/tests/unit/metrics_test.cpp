#include <gtest/gtest.h>

#include "stlf/envs/builtin_specs.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/falsify/metrics.hpp"
#include "stlf/stl/parser.hpp"

using namespace stlf;
using namespace stlf::falsify;

namespace {

// Two 3-D signals whose distance follows `dist` (one value per sample).
Trace distance_trace(const char* a, const char* b, const std::vector<double>& dist, double period = 1.0) {
  Signal sa{a, 3, {}}, sb{b, 3, {}};
  for (double d : dist) {
    sa.data.insert(sa.data.end(), {0.0, d, 0.0});
    sb.data.insert(sb.data.end(), {0.0, 0.0, 0.0});
  }
  return Trace(period, dist.size(), {sa, sb});
}

// Replays one fixed full-rate trace for every input.
class FixedEnv final : public envs::Environment {
 public:
  FixedEnv(TaskSpec spec, Trace trace) : spec_(std::move(spec)), trace_(std::move(trace)) {}
  const TaskSpec& task() const noexcept override { return spec_; }
  Trace simulate(const InputVector&, std::uint64_t) override { return trace_; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<FixedEnv>(*this); }

 private:
  TaskSpec spec_;
  Trace trace_;
};

}  // namespace

TEST(Metrics, DangerFractionCountsViolatingSteps) {
  std::vector<double> d(31, 0.2);
  for (std::size_t t = 16; t < 31; ++t) d[t] = 0.1;
  const Trace w = distance_trace("finger_pos", "point_pos", d);
  const auto danger = envs::builtin_spec(TaskId::PR, envs::SpecKind::Danger);
  int oracle = 0;
  for (double v : d) oracle += v > 0.12;
  EXPECT_EQ(oracle, 16);
  EXPECT_DOUBLE_EQ(danger_fraction(danger, w), 16.0 / 31.0);
}

TEST(Metrics, DangerFractionIsZeroWithoutViolations) {
  const Trace w = distance_trace("finger_pos", "point_pos", std::vector<double>(31, 0.05));
  EXPECT_EQ(danger_fraction(envs::builtin_spec(TaskId::PR, envs::SpecKind::Danger), w), 0.0);
}

TEST(Metrics, DangerFractionUsesOnlyTheOutermostWindow) {
  std::vector<double> d(31, 0.5);
  for (std::size_t t = 25; t < 31; ++t) d[t] = 0.1;
  const Trace w = distance_trace("obj_pos", "hole_pos", d);
  EXPECT_EQ(danger_fraction(envs::builtin_spec(TaskId::PH, envs::SpecKind::Danger), w), 0.0);
  EXPECT_DOUBLE_EQ(danger_fraction(stl::parse("norm(obj_pos - hole_pos) <= 0.37"), w), 25.0 / 31.0);
}

TEST(Metrics, CompletionStepOfEventuallyIsTheFirstCrossing) {
  std::vector<double> d(31, 0.6);
  for (std::size_t t = 12; t < 31; ++t) d[t] = 0.25;
  d[13] = 0.35;
  const Trace w = distance_trace("ball_pos", "hole_pos", d);
  EXPECT_EQ(completion_step(envs::builtin_spec(TaskId::BP, envs::SpecKind::Success), w), 12u);
}

TEST(Metrics, CompletionStepOfGloballyNeedsAStableSuffix) {
  const Trace w = distance_trace("finger_pos", "point_pos",
                                 {0.4, 0.2, 0.4, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2});
  EXPECT_EQ(completion_step(stl::parse("G[0,10](norm(finger_pos - point_pos) <= 0.3)"), w), 3u);
  EXPECT_EQ(completion_step(stl::parse("G[0,10](norm(finger_pos - point_pos) <= 0.1)"), w), std::nullopt);
  EXPECT_EQ(completion_step(stl::parse("norm(finger_pos - point_pos) <= 0.3"), w), std::nullopt);
  EXPECT_EQ(completion_step(stl::parse("norm(finger_pos - point_pos) <= 0.5"), w), 0u);
}

TEST(Metrics, EvaluateConvertsCompletionToControlSteps) {
  std::vector<double> d(301, 0.6);
  for (std::size_t k = 115; k <= 300; ++k) d[k] = 0.25;
  TaskSpec spec = envs::task_spec(TaskId::BP);
  FixedEnv env(spec, distance_trace("ball_pos", "hole_pos", d, 1.0 / 60.0));
  const Metrics m = evaluate(env, *spec.success_spec, *spec.danger_spec, 5, 0);
  EXPECT_EQ(m.trials, 5u);
  EXPECT_EQ(m.sr, 100.0);
  ASSERT_TRUE(m.tct.has_value());
  EXPECT_DOUBLE_EQ(*m.tct, 120.0);
}

TEST(Metrics, TctIsAbsentWithoutSuccesses) {
  TaskSpec spec = envs::task_spec(TaskId::BP);
  FixedEnv env(spec, distance_trace("ball_pos", "hole_pos", std::vector<double>(301, 1.0), 1.0 / 60.0));
  const Metrics m = evaluate(env, *spec.success_spec, *spec.danger_spec, 3, 0);
  EXPECT_EQ(m.sr, 0.0);
  EXPECT_FALSE(m.tct.has_value());
  EXPECT_EQ(m.dbr, 100.0);
}

TEST(Metrics, ZeroTrialsIsRejected) {
  auto env = envs::make_env(TaskId::PR);
  EXPECT_THROW(evaluate(*env, *env->task().success_spec, *env->task().danger_spec, 0, 0), ArgumentError);
}

TEST(Metrics, PointReachingSucceedsEveryTime) {
  auto env = envs::make_env(TaskId::PR);
  const Metrics m = evaluate(*env, *env->task().success_spec, *env->task().danger_spec, 100, 0);
  EXPECT_EQ(m.sr, 100.0);
}

TEST(Metrics, NoiseNeverHelps) {
  for (TaskId id : kAllTasks) {
    const TaskSpec& spec = envs::task_spec(id);
    auto clean = envs::make_env(id);
    auto noisy = envs::make_env(id, envs::default_controller(id), {}, envs::NoiseSpec{0.25});
    for (std::uint64_t seed : {0u, 1u}) {
      const Metrics a = evaluate(*clean, *spec.success_spec, *spec.danger_spec, 100, seed);
      const Metrics b = evaluate(*noisy, *spec.success_spec, *spec.danger_spec, 100, seed);
      EXPECT_GE(a.sr, 95.0) << spec.name;
      EXPECT_LE(b.sr, a.sr) << spec.name << " seed " << seed;
      EXPECT_GE(b.dbr, a.dbr) << spec.name << " seed " << seed;
      for (const Metrics* m : {&a, &b}) {
        EXPECT_GE(m->sr, 0.0);
        EXPECT_LE(m->sr, 100.0);
        EXPECT_GE(m->dbr, 0.0);
        EXPECT_LE(m->dbr, 100.0);
        EXPECT_EQ(m->tct.has_value(), m->sr > 0.0);
      }
    }
  }
}
