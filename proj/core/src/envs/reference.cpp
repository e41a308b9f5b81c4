#include "stlf/envs/reference.hpp"

#include "stlf/errors.hpp"
#include "stlf/stl/parser.hpp"

namespace stlf::envs {

namespace {

constexpr double kDt = 0.05;
constexpr std::size_t kSteps = 60;

const TaskSpec& reference_spec() {
  static const TaskSpec spec = [] {
    TaskSpec s{"REF",
               std::nullopt,
               Box({{"x", -1.0, 1.0}, {"y", -1.0, 1.0}}),
               SignalSchema{{"pos", 2}, {"vel", 2}},
               kSteps,
               2,
               stl::parse("G[0,30](norm(pos) <= 1.3)"),
               stl::parse("F[0,30](norm(pos) <= 0.1)")};
    s.validate();
    return s;
  }();
  return spec;
}

class ReferenceEnv final : public Environment {
 public:
  const TaskSpec& task() const noexcept override { return reference_spec(); }

  Trace simulate(const InputVector& input, std::uint64_t) override {
    const TaskSpec& spec = task();
    if (input.size() != 2 || !spec.input_box.contains(input)) throw DomainError("REF: input outside the input box");
    double p[2] = {input[0], input[1]};
    double v[2] = {0.0, 0.0};
    TraceBuilder out(spec.signal_schema, kSteps + 1);
    out.push(0, p);
    out.push(1, v);
    for (std::size_t k = 0; k < kSteps; ++k) {
      reference_step(p, v, kDt);
      out.push(0, p);
      out.push(1, v);
    }
    return std::move(out).build(kDt);
  }

  std::unique_ptr<Environment> clone() const override { return std::make_unique<ReferenceEnv>(); }
};

}  // namespace

void reference_step(double p[2], double v[2], double dt) noexcept {
  for (int i = 0; i < 2; ++i) {
    v[i] += (-4.0 * p[i] - 2.0 * v[i]) * dt;
    p[i] += v[i] * dt;
  }
}

EnvironmentHandle make_reference_env() { return std::make_unique<ReferenceEnv>(); }

}  // namespace stlf::envs
