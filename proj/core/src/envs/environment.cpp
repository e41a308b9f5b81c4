#include "stlf/envs/environment.hpp"

#include "stlf/errors.hpp"

namespace stlf::envs {

namespace {

class StrideOverride final : public Environment {
 public:
  StrideOverride(EnvironmentHandle inner, TaskSpec spec) : inner_(std::move(inner)), spec_(std::move(spec)) {}

  const TaskSpec& task() const noexcept override { return spec_; }
  Trace simulate(const InputVector& input, std::uint64_t seed) override { return inner_->simulate(input, seed); }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<StrideOverride>(inner_->clone(), spec_);
  }

 private:
  EnvironmentHandle inner_;
  TaskSpec spec_;
};

}  // namespace

EnvironmentHandle with_stl_stride(EnvironmentHandle env, std::size_t stride) {
  if (!env) throw ArgumentError("no environment to wrap");
  if (stride == 0) throw ArgumentError("stl_stride must be at least 1");
  TaskSpec spec = env->task();
  spec.stl_stride = stride;
  spec.validate();
  return std::make_unique<StrideOverride>(std::move(env), std::move(spec));
}

}  // namespace stlf::envs
