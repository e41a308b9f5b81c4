#include "stlf/envs/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "plant.hpp"
#include "scenarios.hpp"
#include "stlf/envs/builtin_specs.hpp"
#include "stlf/errors.hpp"
#include "stlf/rng.hpp"

namespace stlf::envs {

namespace {

Box xy_box(double xlo, double xhi, double ylo, double yhi) { return Box({{"x", xlo, xhi}, {"y", ylo, yhi}}); }

SignalSchema vec3s(std::initializer_list<const char*> names) {
  SignalSchema out;
  for (const char* n : names) out.push_back({n, 3});
  return out;
}

TaskSpec build_spec(TaskId id) {
  auto make = [id](Box box, SignalSchema schema) {
    TaskSpec spec{std::string(to_string(id)), id, std::move(box), std::move(schema), kEpisodeSteps, kStlStride,
                  builtin_spec(id, SpecKind::Success), builtin_spec(id, SpecKind::Danger)};
    spec.validate();
    return spec;
  };
  switch (id) {
    case TaskId::PR:
      return make(Box({{"x", 0.3, 0.7}, {"y", -0.4, 0.4}, {"z", 0.4, 0.8}}), vec3s({"finger_pos", "point_pos"}));
    case TaskId::CS: return make(xy_box(0.4, 0.8, -0.1, 0.3), vec3s({"cube_pos", "target_pos"}));
    case TaskId::PH: return make(xy_box(0.3, 0.7, -0.2, 0.2), vec3s({"obj_pos", "hole_pos"}));
    case TaskId::BB: return make(xy_box(0.2, 0.5, -0.15, 0.15), vec3s({"ball_pos", "tray_pos"}));
    case TaskId::BC: return make(xy_box(1.05, 1.15, -0.05, 0.05), vec3s({"ball_pos", "tool_pos"}));
    case TaskId::BP: return make(xy_box(0.4, 0.6, -0.1, 0.1), vec3s({"ball_pos", "hole_pos"}));
    case TaskId::DO: return make(xy_box(0.75, 0.85, -0.1, 0.1), SignalSchema{{"door_yaw", 1}});
    case TaskId::CP:
      return make(xy_box(0.45, 0.75, -0.35, 0.35), vec3s({"cloth_pos", "table_pos", "ground_pos"}));
  }
  throw ArgumentError("unknown task");
}

class SurrogateEnv final : public Environment {
 public:
  SurrogateEnv(TaskId id, const ControllerParams& controller, std::optional<DefectSpec> defect,
               std::optional<NoiseSpec> noise)
      : id_(id), controller_(controller), defect_(std::move(defect)), noise_(noise) {}

  const TaskSpec& task() const noexcept override { return task_spec(id_); }

  Trace simulate(const InputVector& input, std::uint64_t seed) override {
    const TaskSpec& spec = task();
    if (input.size() != spec.input_box.dim() || !spec.input_box.contains(input)) {
      throw DomainError(spec.name + ": input outside the input box");
    }
    const bool defective = defect_ && defect_->region.contains(input);
    const std::optional<DefectMode> mode = defective ? std::optional(defect_->mode) : std::nullopt;

    auto scenario = detail::make_scenario(id_);
    detail::Plant ee;
    scenario->reset(input, ee);

    detail::StepInfo info;
    info.dt = kControlPeriod;
    info.params = &controller_;
    info.flip = mode == DefectMode::GainFlip ? -1.0 : 1.0;
    info.gains = {controller_.k_pos * info.flip, controller_.k_vel, controller_.v_max};

    const double sigma = noise_ ? std::sqrt(noise_->variance) : 0.0;
    Rng rng(seed);
    std::vector<double> u(3 + scenario->extra_actions());

    TraceBuilder out(spec.signal_schema, spec.episode_steps + 1);
    scenario->emit(ee, out);
    for (std::size_t k = 0; k < spec.episode_steps; ++k) {
      info.step = k;
      info.grasp_enabled = !(mode == DefectMode::DelayedGrasp && k < spec.episode_steps / 2);
      scenario->control(ee, info, u);
      if (mode == DefectMode::DeadZone) std::fill(u.begin(), u.end(), 0.0);
      if (sigma > 0.0) {
        for (double& c : u) c += sigma * rng.normal();
      }
      for (double& c : u) c = std::clamp(c, -1.0, 1.0);
      ee.step(u, info.dt);
      scenario->advance(ee, u, info);
      scenario->emit(ee, out);
    }
    return std::move(out).build(kControlPeriod);
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<SurrogateEnv>(*this); }

 private:
  TaskId id_;
  ControllerParams controller_;
  std::optional<DefectSpec> defect_;
  std::optional<NoiseSpec> noise_;
};

}  // namespace

const TaskSpec& task_spec(TaskId id) {
  static const std::vector<TaskSpec> specs = [] {
    std::vector<TaskSpec> all;
    for (TaskId t : kAllTasks) all.push_back(build_spec(t));
    return all;
  }();
  return specs.at(static_cast<std::size_t>(id));
}

EnvironmentHandle make_env(TaskId id, const ControllerParams& controller, const std::optional<DefectSpec>& defect,
                           const std::optional<NoiseSpec>& noise) {
  if (static_cast<std::size_t>(id) >= kAllTasks.size()) throw ArgumentError("unknown task id");
  controller.validate();
  if (defect) defect->validate(task_spec(id).input_box);
  if (noise) noise->validate();
  return std::make_unique<SurrogateEnv>(id, controller, defect, noise);
}

EnvironmentHandle make_env(TaskId id) { return make_env(id, default_controller(id)); }

}  // namespace stlf::envs
