#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "stlf/envs/builtin_specs.hpp"
#include "stlf/envs/reference.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/rng.hpp"
#include "stlf/stl/parser.hpp"
#include "stlf/stl/robustness.hpp"

using namespace stlf;
using namespace stlf::envs;

namespace {

double success_robustness(Environment& env, const InputVector& x, std::uint64_t seed = 0) {
  const TaskSpec& spec = env.task();
  return stl::robustness(*spec.success_spec, decimate(env.simulate(x, seed), spec.stl_stride));
}

InputVector uniform_input(const Box& box, Rng& rng) {
  InputVector x;
  for (const auto& d : box.dims()) x.values.push_back(rng.uniform(d.lo, d.hi));
  return x;
}

// Calls `f` on every point of a grid with `k` points per axis (corners included).
void for_grid(const Box& box, std::size_t k, const std::function<void(const InputVector&)>& f) {
  std::vector<std::size_t> idx(box.dim(), 0);
  while (true) {
    InputVector x;
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const double u = static_cast<double>(idx[i]) / static_cast<double>(k - 1);
      x.values.push_back(idx[i] + 1 == k ? box[i].hi : box[i].lo + u * box[i].width());
    }
    f(x);
    std::size_t i = 0;
    while (i < box.dim() && ++idx[i] == k) idx[i++] = 0;
    if (i == box.dim()) return;
  }
}

}  // namespace

TEST(Envs, PointReachingInputBox) {
  const Box& box = make_env(TaskId::PR)->task().input_box;
  ASSERT_EQ(box.dim(), 3u);
  EXPECT_EQ(box[0].lo, 0.3);
  EXPECT_EQ(box[0].hi, 0.7);
  EXPECT_EQ(box[1].lo, -0.4);
  EXPECT_EQ(box[1].hi, 0.4);
  EXPECT_EQ(box[2].lo, 0.4);
  EXPECT_EQ(box[2].hi, 0.8);
}

TEST(Envs, BallBalancingInputBox) {
  const Box& box = make_env(TaskId::BB)->task().input_box;
  ASSERT_EQ(box.dim(), 2u);
  EXPECT_EQ(box[0].lo, 0.2);
  EXPECT_EQ(box[0].hi, 0.5);
  EXPECT_EQ(box[1].lo, -0.15);
  EXPECT_EQ(box[1].hi, 0.15);
}

TEST(Envs, SchemasNameTheSpecSignals) {
  EXPECT_EQ(task_spec(TaskId::PR).signal_schema, (SignalSchema{{"finger_pos", 3}, {"point_pos", 3}}));
  EXPECT_EQ(task_spec(TaskId::BB).signal_schema, (SignalSchema{{"ball_pos", 3}, {"tray_pos", 3}}));
  EXPECT_EQ(task_spec(TaskId::DO).signal_schema, (SignalSchema{{"door_yaw", 1}}));
}

TEST(Envs, TaskSpecsCarryTheBuiltinFormulas) {
  for (TaskId id : kAllTasks) {
    const TaskSpec& spec = make_env(id)->task();
    EXPECT_EQ(spec.success_spec, builtin_spec(id, SpecKind::Success));
    EXPECT_EQ(spec.danger_spec, builtin_spec(id, SpecKind::Danger));
  }
  EXPECT_EQ(builtin_spec(TaskId::CS, SpecKind::Danger),
            stl::parse("G[0,30](∥cube_pos − target_pos∥ ≤ 0.35 ∨ ∥cube_pos_z − target_pos_z∥ ≥ 0.02)"));
}

TEST(Envs, DefectOutsideTheBoxIsRejected) {
  DefectSpec d{Box({{"x", 0.6, 0.8}, {"y", 0.0, 0.1}, {"z", 0.5, 0.6}}), DefectMode::DeadZone, 0.0};
  d.volume_fraction = d.region.volume() / task_spec(TaskId::PR).input_box.volume();
  EXPECT_THROW(make_env(TaskId::PR, default_controller(TaskId::PR), d), ArgumentError);
}

TEST(Envs, InvalidParametersAreRejected) {
  ControllerParams c = default_controller(TaskId::PR);
  c.k_pos = 0.0;
  EXPECT_THROW(make_env(TaskId::PR, c), ArgumentError);
  c = default_controller(TaskId::PR);
  c.v_max = std::nan("");
  EXPECT_THROW(make_env(TaskId::PR, c), ArgumentError);
  EXPECT_THROW(make_env(TaskId::PR, default_controller(TaskId::PR), {}, NoiseSpec{-0.1}), ArgumentError);
  EXPECT_THROW(make_env(static_cast<TaskId>(42)), ArgumentError);
}

TEST(Envs, InputOutsideTheBoxIsDomainError) {
  auto env = make_env(TaskId::PR);
  EXPECT_THROW(env->simulate({0.9, 0.0, 0.5}, 0), DomainError);
  EXPECT_THROW(env->simulate({0.5, 0.0}, 0), DomainError);
}

TEST(Envs, SimulationIsDeterministic) {
  for (TaskId id : kAllTasks) {
    auto env = make_env(id, default_controller(id), {}, NoiseSpec{0.25});
    Rng rng(static_cast<std::uint64_t>(id));
    const InputVector x = uniform_input(env->task().input_box, rng);
    EXPECT_EQ(env->simulate(x, 17), env->simulate(x, 17)) << env->task().name;
    EXPECT_EQ(env->clone()->simulate(x, 17), env->simulate(x, 17)) << env->task().name;
    EXPECT_NE(env->simulate(x, 17), env->simulate(x, 18)) << env->task().name;
  }
}

TEST(Envs, WithoutNoiseTheSeedIsIrrelevant) {
  auto env = make_env(TaskId::CS);
  EXPECT_EQ(env->simulate({0.6, 0.1}, 1), env->simulate({0.6, 0.1}, 2));
}

TEST(Envs, EmittedTracesMatchTheSchema) {
  for (TaskId id : kAllTasks) {
    auto env = make_env(id, default_controller(id), {}, NoiseSpec{0.25});
    const TaskSpec& spec = env->task();
    Rng rng(100 + static_cast<std::uint64_t>(id));
    for (int i = 0; i < 100; ++i) {
      const Trace w = env->simulate(uniform_input(spec.input_box, rng), static_cast<std::uint64_t>(i));
      ASSERT_NO_THROW(spec.check_trace(w)) << spec.name;
      ASSERT_EQ(w.length(), spec.episode_steps + 1);
      ASSERT_DOUBLE_EQ(w.sample_period(), kControlPeriod);
    }
  }
}

TEST(Envs, PointReachingSucceedsOnTheWholeGrid) {
  auto env = make_env(TaskId::PR);
  std::size_t points = 0;
  for_grid(env->task().input_box, 9, [&](const InputVector& x) {
    ++points;
    EXPECT_GT(success_robustness(*env, x), 0.0) << x[0] << "," << x[1] << "," << x[2];
  });
  EXPECT_EQ(points, 729u);
}

TEST(Envs, DefaultControllersAreCompetent) {
  for (TaskId id : kAllTasks) {
    auto env = make_env(id);
    Rng rng(7);
    int ok = 0;
    for (int i = 0; i < 100; ++i) ok += success_robustness(*env, uniform_input(env->task().input_box, rng)) > 0.0;
    EXPECT_GE(ok, 95) << to_string(id);
  }
}

TEST(Envs, DeadZoneFreezesThePointReachingArm) {
  const Box& box = task_spec(TaskId::PR).input_box;
  const DefectSpec d = make_defect(box, DefectMode::DeadZone, 1.0, 0);
  auto env = make_env(TaskId::PR, default_controller(TaskId::PR), d);
  const Trace w = env->simulate({0.5, 0.1, 0.6}, 0);
  const auto p0 = w.sample("finger_pos", 0);
  for (std::size_t t = 1; t < w.length(); ++t) {
    ASSERT_EQ(w.sample("finger_pos", t)[0], p0[0]);
    ASSERT_EQ(w.sample("finger_pos", t)[1], p0[1]);
  }
  EXPECT_LT(success_robustness(*env, {0.5, 0.1, 0.6}), 0.0);
}

TEST(Envs, DefectRegionsFailEverywhereInside) {
  for (TaskId id : kAllTasks) {
    const Box& box = task_spec(id).input_box;
    const DefectSpec d = make_defect(box, default_defect_mode(id), 0.02, derive_seed(0, hash_label(to_string(id))));
    auto env = make_env(id, default_controller(id), d);
    for_grid(d.region, 5, [&](const InputVector& x) {
      EXPECT_LT(success_robustness(*env, x), 0.0) << to_string(id) << " " << to_string(d.mode);
    });
  }
}

TEST(Envs, EveryModeBreaksPointReachingInsideItsRegion) {
  const Box& box = task_spec(TaskId::PR).input_box;
  for (DefectMode mode : {DefectMode::DeadZone, DefectMode::GainFlip}) {
    const DefectSpec d = make_defect(box, mode, 0.02, 3);
    auto env = make_env(TaskId::PR, default_controller(TaskId::PR), d);
    for_grid(d.region, 3, [&](const InputVector& x) { EXPECT_LT(success_robustness(*env, x), 0.0); });
  }
}

TEST(Envs, DelayedGraspBreaksBallCatching) {
  const Box& box = task_spec(TaskId::BC).input_box;
  const DefectSpec d = make_defect(box, DefectMode::DelayedGrasp, 1.0, 0);
  auto env = make_env(TaskId::BC, default_controller(TaskId::BC), d);
  for_grid(box, 3, [&](const InputVector& x) { EXPECT_LT(success_robustness(*env, x), 0.0); });
}

TEST(Envs, InputsOutsideTheDefectBehaveNormally) {
  const Box& box = task_spec(TaskId::PR).input_box;
  const DefectSpec d = make_defect(box, DefectMode::DeadZone, 0.02, 5);
  auto sound = make_env(TaskId::PR);
  auto defective = make_env(TaskId::PR, default_controller(TaskId::PR), d);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const InputVector x = uniform_input(box, rng);
    if (d.region.contains(x)) continue;
    EXPECT_EQ(sound->simulate(x, 0), defective->simulate(x, 0));
  }
}

TEST(Defect, RegionHasTheRequestedVolumeAndStaysInside) {
  for (TaskId id : kAllTasks) {
    const Box& box = task_spec(id).input_box;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DefectSpec d = make_defect(box, DefectMode::GainFlip, 0.02, seed);
      EXPECT_TRUE(box.contains(d.region));
      EXPECT_NEAR(d.region.volume() / box.volume(), 0.02, 1e-9);
      EXPECT_NO_THROW(d.validate(box));
    }
  }
  const Box& box = task_spec(TaskId::PR).input_box;
  EXPECT_EQ(make_defect(box, DefectMode::DeadZone, 0.02, 9), make_defect(box, DefectMode::DeadZone, 0.02, 9));
  EXPECT_NE(make_defect(box, DefectMode::DeadZone, 0.02, 9), make_defect(box, DefectMode::DeadZone, 0.02, 10));
}

TEST(Defect, WrongFractionIsRejected) {
  const Box& box = task_spec(TaskId::PR).input_box;
  DefectSpec d = make_defect(box, DefectMode::DeadZone, 0.02, 0);
  d.volume_fraction = 0.03;
  EXPECT_THROW(d.validate(box), ArgumentError);
  EXPECT_THROW(make_defect(box, DefectMode::DeadZone, 0.0, 0), ArgumentError);
  EXPECT_THROW(make_defect(box, DefectMode::DeadZone, 1.5, 0), ArgumentError);
}

TEST(Defect, ModeNames) {
  for (DefectMode m : {DefectMode::DeadZone, DefectMode::GainFlip, DefectMode::DelayedGrasp}) {
    EXPECT_EQ(parse_defect_mode(to_string(m)), m);
  }
  EXPECT_FALSE(parse_defect_mode("none").has_value());
}

TEST(Envs, StrideOverrideRewritesTheTaskSpec) {
  auto env = with_stl_stride(make_env(TaskId::PR), 5);
  EXPECT_EQ(env->task().stl_stride, 5u);
  EXPECT_EQ(env->task().input_box, task_spec(TaskId::PR).input_box);
  EXPECT_EQ(env->clone()->task().stl_stride, 5u);
  EXPECT_THROW(with_stl_stride(make_env(TaskId::PR), 0), ArgumentError);
  EXPECT_THROW(with_stl_stride(make_env(TaskId::PR), 20), ArgumentError);
}

TEST(Reference, FollowsTheClosedFormUpdate) {
  auto env = make_reference_env();
  const Trace w = env->simulate({0.8, -0.4}, 123);
  EXPECT_EQ(w, env->simulate({0.8, -0.4}, 7));
  double p[2] = {0.8, -0.4}, v[2] = {0.0, 0.0};
  for (std::size_t k = 1; k < w.length(); ++k) {
    for (int i = 0; i < 2; ++i) {
      v[i] += (-4.0 * p[i] - 2.0 * v[i]) * 0.05;
      p[i] += v[i] * 0.05;
    }
    ASSERT_EQ(w.sample("pos", k)[0], p[0]);
    ASSERT_EQ(w.sample("vel", k)[1], v[1]);
  }
  EXPECT_EQ(env->task().name, "REF");
  EXPECT_NO_THROW(env->task().validate());
  EXPECT_THROW(env->simulate({1.5, 0.0}, 0), DomainError);
}
