#include "stlf/bridge/attach.hpp"

#include <cmath>

#include "stlf/bridge/transport.hpp"
#include "stlf/errors.hpp"

namespace stlf::bridge {

namespace {

void check_against(const Handshake& h, const TaskSpec& expected) {
  const Box& box = expected.input_box;
  if (h.input_dim != box.dim()) {
    throw SchemaError("bridge declares input dimension " + std::to_string(h.input_dim) + ", expected " +
                      std::to_string(box.dim()));
  }
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (std::abs(h.bounds[i].first - box[i].lo) > 1e-12 || std::abs(h.bounds[i].second - box[i].hi) > 1e-12) {
      throw SchemaError("bridge bounds of input '" + box[i].name + "' differ from the expected box");
    }
  }
  for (const auto& decl : expected.signal_schema) {
    const SignalDecl* got = nullptr;
    for (const auto& s : h.signals) {
      if (s.name == decl.name) got = &s;
    }
    if (!got) throw SchemaError("bridge does not provide signal '" + decl.name + "'");
    if (got->dim != decl.dim) {
      throw SchemaError("bridge signal '" + decl.name + "' has dimension " + std::to_string(got->dim) +
                        ", expected " + std::to_string(decl.dim));
    }
  }
  for (const auto& s : h.signals) {
    bool declared = false;
    for (const auto& decl : expected.signal_schema) declared = declared || decl.name == s.name;
    if (!declared) throw SchemaError("bridge provides unexpected signal '" + s.name + "'");
  }
  if (h.episode_steps != expected.episode_steps) {
    throw SchemaError("bridge episode length " + std::to_string(h.episode_steps) + " differs from the expected " +
                      std::to_string(expected.episode_steps));
  }
}

TaskSpec spec_from(const Handshake& h, const AttachOptions& options) {
  if (options.expected) {
    check_against(h, *options.expected);
    return *options.expected;
  }
  if (h.input_dim == 0) throw BridgeError("bridge declares no inputs");
  std::vector<Interval> dims;
  for (std::size_t i = 0; i < h.bounds.size(); ++i) {
    dims.push_back({"x" + std::to_string(i), h.bounds[i].first, h.bounds[i].second});
  }
  TaskSpec spec{h.name, std::nullopt, Box(std::move(dims)), h.signals, h.episode_steps, options.stl_stride,
                std::nullopt, std::nullopt};
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw BridgeError(std::string("bridge handshake is unusable: ") + e.what());
  }
  return spec;
}

class BridgeEnv final : public envs::Environment {
 public:
  BridgeEnv(std::string endpoint, AttachOptions options)
      : endpoint_(std::move(endpoint)), options_(std::move(options)) {
    transport_ = open_transport(endpoint_, options_.timeout);
    transport_->send_line(encode_hello());
    handshake_ = parse_handshake(transport_->recv_line(options_.timeout));
    spec_ = spec_from(handshake_, options_);
  }

  ~BridgeEnv() override {
    if (!transport_) return;
    try {
      transport_->send_line(encode_close());
    } catch (const std::exception&) {
      // the peer is already gone
    }
    transport_->close();
  }

  const TaskSpec& task() const noexcept override { return spec_; }

  Trace simulate(const InputVector& input, std::uint64_t seed) override {
    if (input.size() != spec_.input_box.dim() || !spec_.input_box.contains(input)) {
      throw DomainError(spec_.name + ": input outside the input box");
    }
    if (broken_) throw BridgeError("bridge connection to " + endpoint_ + " was lost earlier");
    std::string reply;
    try {
      transport_->send_line(encode_simulate(input, seed));
      reply = transport_->recv_line(options_.timeout);
    } catch (const BridgeError&) {
      broken_ = true;
      throw;
    }
    Trace trace = parse_trace_reply(reply, spec_.signal_schema, spec_.episode_steps + 1);
    spec_.check_trace(trace);
    return trace;
  }

  std::unique_ptr<envs::Environment> clone() const override {
    return std::make_unique<BridgeEnv>(endpoint_, options_);
  }

 private:
  std::string endpoint_;
  AttachOptions options_;
  std::unique_ptr<Transport> transport_;
  Handshake handshake_;
  TaskSpec spec_{"", std::nullopt, Box({{"x0", 0.0, 0.0}}), {}, 1, 1, std::nullopt, std::nullopt};
  bool broken_ = false;
};

}  // namespace

envs::EnvironmentHandle attach(const std::string& endpoint, const AttachOptions& options) {
  return std::make_unique<BridgeEnv>(endpoint, options);
}

}  // namespace stlf::bridge
