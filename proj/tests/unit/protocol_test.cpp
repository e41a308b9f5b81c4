#include <gtest/gtest.h>

#include <string>

#include "json.hpp"
#include "stlf/bridge/protocol.hpp"
#include "stlf/envs/reference.hpp"
#include "stlf/envs/surrogate.hpp"
#include "stlf/errors.hpp"
#include "stlf/rng.hpp"

using namespace stlf;
using namespace stlf::bridge;
using Json = nlohmann::json;

namespace {

const SignalSchema kSchema{{"pos", 2}, {"gap", 1}};

std::string trace_line(const Json& signals, const Json& time = nullptr) {
  Json j = {{"op", "trace"}, {"signals", signals}};
  if (!time.is_null()) j["time"] = time;
  return j.dump();
}

Json good_signals() {
  return {{"pos", {{0.0, 1.0}, {0.5, 1.5}, {1.0, 2.0}}}, {"gap", {0.1, 0.2, 0.3}}};
}

std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)); }

template <class E>
std::string message_of(const std::string& line, const SignalSchema& schema, std::size_t n) {
  try {
    parse_trace_reply(line, schema, n);
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Protocol, RequestsAreSingleLineJson) {
  EXPECT_EQ(Json::parse(encode_hello())["op"], "hello");
  EXPECT_EQ(Json::parse(encode_close())["op"], "close");
  const Json sim = Json::parse(encode_simulate(InputVector{{0.25, -1.0}}, 18446744073709551615ull));
  EXPECT_EQ(sim["op"], "simulate");
  EXPECT_EQ(sim["input"], Json({0.25, -1.0}));
  EXPECT_EQ(sim["seed"].get<std::uint64_t>(), 18446744073709551615ull);
  for (const auto& line : {encode_hello(), encode_close(), encode_simulate(InputVector{{1.0}}, 3)}) {
    EXPECT_EQ(line.find('\n'), std::string::npos);
  }
}

TEST(Protocol, HandshakeRoundTrips) {
  for (TaskId id : kAllTasks) {
    auto env = envs::make_env(id);
    const Handshake h = make_handshake(*env);
    EXPECT_EQ(h.input_dim, env->task().input_box.dim());
    EXPECT_EQ(h.episode_steps, 300u);
    EXPECT_EQ(parse_handshake(encode_handshake(h)), h);
  }
}

TEST(Protocol, HandshakeRejectsBrokenReplies) {
  auto env = envs::make_reference_env();
  Handshake h = make_handshake(*env);
  Json good = Json::parse(encode_handshake(h));

  auto with = [&](const char* key, const Json& value) {
    Json j = good;
    j[key] = value;
    return j.dump();
  };
  auto without = [&](const char* key) {
    Json j = good;
    j.erase(key);
    return j.dump();
  };
  EXPECT_THROW(parse_handshake("{"), BridgeError);
  EXPECT_THROW(parse_handshake("[]"), BridgeError);
  EXPECT_THROW(parse_handshake(R"({"op":"error","message":"no"})"), BridgeError);
  EXPECT_THROW(parse_handshake(with("op", "trace")), BridgeError);
  EXPECT_THROW(parse_handshake(with("input_dim", -1)), BridgeError);
  EXPECT_THROW(parse_handshake(with("input_dim", 3)), BridgeError);
  EXPECT_THROW(parse_handshake(with("bounds", Json({{1.0, 0.0}, {0.0, 1.0}}))), BridgeError);
  EXPECT_THROW(parse_handshake(with("signals", Json::array())), BridgeError);
  EXPECT_THROW(parse_handshake(with("signals", Json({{{"name", "pos"}, {"dim", 0}}}))), BridgeError);
  EXPECT_THROW(parse_handshake(with("protocol_version", "2.0.0")), BridgeError);
  EXPECT_THROW(parse_handshake(with("protocol_version", "one")), BridgeError);
  for (const char* key : {"name", "input_dim", "bounds", "signals", "episode_steps", "protocol_version"}) {
    EXPECT_THROW(parse_handshake(without(key)), BridgeError) << key;
  }
  EXPECT_NO_THROW(parse_handshake(with("protocol_version", "1.7.2")));
}

TEST(Protocol, TraceReplyDecodes) {
  const Trace w = parse_trace_reply(trace_line(good_signals(), {0.0, 0.05, 0.1}), kSchema, 3);
  EXPECT_EQ(w.length(), 3u);
  EXPECT_NEAR(w.sample_period(), 0.05, 1e-15);
  EXPECT_EQ(w.at("pos").data, (std::vector<double>{0.0, 1.0, 0.5, 1.5, 1.0, 2.0}));
  EXPECT_EQ(w.at("gap").data, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(parse_trace_reply(trace_line(good_signals()), kSchema, 3).sample_period(), 1.0);
}

TEST(Protocol, TraceReplyRoundTripsExactly) {
  auto env = envs::make_env(TaskId::CP, envs::default_controller(TaskId::CP), {}, envs::NoiseSpec{0.25});
  const Trace w = env->simulate({0.6, 0.1}, 4);
  const Trace back = parse_trace_reply(encode_trace(w), env->task().signal_schema, w.length());
  for (const auto& s : w.signals()) EXPECT_EQ(back.at(s.name).data, s.data) << s.name;
  EXPECT_NEAR(back.sample_period(), w.sample_period(), 1e-15);
}

TEST(Protocol, TraceReplySchemaErrorsNameTheSignal) {
  Json missing = good_signals();
  missing.erase("gap");
  EXPECT_NE(message_of<SchemaError>(trace_line(missing), kSchema, 3).find("'gap'"), std::string::npos);

  Json extra = good_signals();
  extra["ghost"] = {1.0, 2.0, 3.0};
  EXPECT_NE(message_of<SchemaError>(trace_line(extra), kSchema, 3).find("'ghost'"), std::string::npos);

  Json wide = good_signals();
  wide["pos"] = {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  EXPECT_NE(message_of<SchemaError>(trace_line(wide), kSchema, 3).find("'pos'"), std::string::npos);

  Json flat = good_signals();
  flat["pos"] = {0.0, 1.0, 2.0};
  EXPECT_NE(message_of<SchemaError>(trace_line(flat), kSchema, 3).find("'pos'"), std::string::npos);
}

TEST(Protocol, TraceReplyOtherFailures) {
  EXPECT_THROW(parse_trace_reply(trace_line(good_signals()), kSchema, 4), ArgumentError);
  EXPECT_THROW(parse_trace_reply(trace_line(good_signals(), {0.0, 0.05, 0.2}), kSchema, 3), SamplingError);
  EXPECT_THROW(parse_trace_reply(trace_line(good_signals(), {0.0, 0.05}), kSchema, 3), BridgeError);
  EXPECT_THROW(parse_trace_reply(encode_error("domain", "out of range"), kSchema, 3), DomainError);
  EXPECT_THROW(parse_trace_reply(encode_error("simulation", "boom"), kSchema, 3), BridgeError);
  EXPECT_THROW(parse_trace_reply("this is not json", kSchema, 3), BridgeError);
  EXPECT_THROW(parse_trace_reply(R"({"op":"hello"})", kSchema, 3), BridgeError);
  EXPECT_THROW(parse_trace_reply(R"({"signals":{}})", kSchema, 3), BridgeError);
  EXPECT_THROW(parse_trace_reply(R"({"op":"trace","signals":[]})", kSchema, 3), BridgeError);
}

TEST(Protocol, ServeLineAnswersEveryRequestKind) {
  auto env = envs::make_reference_env();
  const Handshake h = parse_handshake(serve_line(*env, encode_hello()));
  EXPECT_EQ(h, make_handshake(*env));

  const InputVector x{{0.3, -0.7}};
  const Trace w = parse_trace_reply(serve_line(*env, encode_simulate(x, 0)), h.signals, h.episode_steps + 1);
  const Trace native = env->simulate(x, 0);
  for (const auto& s : native.signals()) EXPECT_EQ(w.at(s.name).data, s.data);

  EXPECT_EQ(serve_line(*env, encode_close()), "");
  EXPECT_THROW(parse_trace_reply(serve_line(*env, encode_simulate(InputVector{{2.0, 0.0}}, 0)), h.signals, 61),
               DomainError);
  EXPECT_THROW(parse_trace_reply(serve_line(*env, encode_simulate(InputVector{{0.0}}, 0)), h.signals, 61),
               DomainError);

  const Json unknown = Json::parse(serve_line(*env, R"({"op":"teleport"})"));
  EXPECT_EQ(unknown["op"], "error");
  EXPECT_EQ(unknown["kind"], "protocol");
}

TEST(Protocol, ServeLineIsTotalOnMalformedInput) {
  auto env = envs::make_reference_env();
  const std::vector<std::string> seeds{
      "",
      "{",
      "null",
      "[1,2,3]",
      R"({"op":1})",
      R"({"op":"simulate"})",
      R"({"op":"simulate","input":"x"})",
      R"({"op":"simulate","input":[0.1,"a"]})",
      R"({"op":"simulate","input":[0.1,0.2],"seed":-3})",
      R"({"op":"simulate","input":[0.1,0.2],"seed":1.5})",
      R"({"op":"simulate","input":[1e400,0.2]})",
      "\xff\xfe{\"op\":\"hello\"}",
      R"({"op":"simulate","input":[0.1,0.2,0.3]})",
  };
  for (const auto& line : seeds) {
    const std::string reply = serve_line(*env, line);
    const Json j = Json::parse(reply, nullptr, false);
    ASSERT_FALSE(j.is_discarded()) << line;
    EXPECT_EQ(j["op"], "error") << line;
  }

  Rng rng(2024);
  const std::string alphabet = "{}[]\":,0123456789.-eE opsimulatehelloinputseed\\\x01\xc3";
  const std::string base = encode_simulate(InputVector{{0.1, 0.2}}, 7);
  int errors = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string line = base;
    const std::size_t edits = 1 + below(rng, 6);
    for (std::size_t k = 0; k < edits && !line.empty(); ++k) {
      const std::size_t pos = below(rng, line.size());
      const char c = alphabet[below(rng, alphabet.size())];
      switch (below(rng, 3)) {
        case 0: line[pos] = c; break;
        case 1: line.insert(line.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
        default: line.erase(pos, 1); break;
      }
    }
    std::string reply;
    ASSERT_NO_THROW(reply = serve_line(*env, line)) << line;
    if (reply.empty()) continue;
    const Json j = Json::parse(reply, nullptr, false);
    ASSERT_FALSE(j.is_discarded()) << line;
    ASSERT_TRUE(j["op"] == "error" || j["op"] == "trace" || j["op"] == "hello") << line;
    errors += j["op"] == "error";
  }
  EXPECT_GT(errors, 500);
}
