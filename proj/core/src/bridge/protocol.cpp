#include "stlf/bridge/protocol.hpp"

#include <cmath>

#include "json.hpp"
#include "stlf/errors.hpp"

namespace stlf::bridge {

namespace {

using Json = nlohmann::json;

Json parse_object(std::string_view line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw BridgeError("bridge sent malformed JSON: " + std::string(line.substr(0, 200)));
  return j;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw BridgeError(std::string("bridge message lacks '") + key + "'");
  return *it;
}

std::size_t count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw BridgeError(std::string("bridge field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw BridgeError(what + " must be a number");
  return v.get<double>();
}

unsigned major_version(std::string_view v) {
  const auto dot = v.find('.');
  const std::string_view head = v.substr(0, dot);
  if (head.empty() || dot == std::string_view::npos) throw BridgeError("bad protocol_version '" + std::string(v) + "'");
  unsigned out = 0;
  for (char c : head) {
    if (c < '0' || c > '9') throw BridgeError("bad protocol_version '" + std::string(v) + "'");
    out = out * 10 + static_cast<unsigned>(c - '0');
  }
  return out;
}

// Reads one sample block of `dim` values: [[...], ...] rows, or bare numbers
// when dim is 1.
void append_sample(const Json& row, std::size_t dim, const std::string& name, std::vector<double>& out) {
  if (row.is_number() && dim == 1) {
    out.push_back(row.get<double>());
    return;
  }
  if (!row.is_array() || row.size() != dim) {
    const std::size_t got = row.is_array() ? row.size() : 1;
    throw SchemaError("signal '" + name + "' has dimension " + std::to_string(got) + ", expected " +
                      std::to_string(dim));
  }
  for (const auto& v : row) {
    if (!v.is_number()) throw ValueError("signal '" + name + "' contains a non-numeric value");
    out.push_back(v.get<double>());
  }
}

}  // namespace

std::string encode_hello() { return R"({"op":"hello"})"; }

std::string encode_simulate(const InputVector& input, std::uint64_t seed) {
  Json j = {{"op", "simulate"}, {"input", input.values}, {"seed", seed}};
  return j.dump();
}

std::string encode_close() { return R"({"op":"close"})"; }

Handshake parse_handshake(std::string_view line) {
  const Json j = parse_object(line);
  const Json& op = field(j, "op");
  if (op == "error") {
    throw BridgeError("bridge refused hello: " + j.value("message", std::string("(no message)")));
  }
  if (!op.is_string() || op.get<std::string>() != "hello") throw BridgeError("expected a hello reply");
  Handshake h;
  const Json& name = field(j, "name");
  if (!name.is_string()) throw BridgeError("bridge field 'name' must be a string");
  h.name = name.get<std::string>();
  h.input_dim = count_field(j, "input_dim");
  const Json& bounds = field(j, "bounds");
  if (!bounds.is_array() || bounds.size() != h.input_dim) {
    throw BridgeError("bridge bounds must list input_dim [lo, hi] pairs");
  }
  for (const auto& b : bounds) {
    if (!b.is_array() || b.size() != 2) throw BridgeError("bridge bounds must be [lo, hi] pairs");
    const double lo = number(b[0], "bound");
    const double hi = number(b[1], "bound");
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw BridgeError("bridge bound has lo > hi");
    h.bounds.emplace_back(lo, hi);
  }
  const Json& signals = field(j, "signals");
  if (!signals.is_array() || signals.empty()) throw BridgeError("bridge must declare at least one signal");
  for (const auto& s : signals) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string() || !s.contains("dim") ||
        !s["dim"].is_number_unsigned() || s["dim"].get<std::size_t>() == 0) {
      throw BridgeError("bridge signals must be {name, dim >= 1} objects");
    }
    h.signals.push_back({s["name"].get<std::string>(), s["dim"].get<std::size_t>()});
  }
  h.episode_steps = count_field(j, "episode_steps");
  const Json& version = field(j, "protocol_version");
  if (!version.is_string()) throw BridgeError("bridge field 'protocol_version' must be a string");
  h.protocol_version = version.get<std::string>();
  if (major_version(h.protocol_version) != major_version(kProtocolVersion)) {
    throw BridgeError("bridge speaks protocol " + h.protocol_version + ", engine speaks " +
                      std::string(kProtocolVersion));
  }
  return h;
}

Trace parse_trace_reply(std::string_view line, const SignalSchema& schema, std::size_t expected_length) {
  const Json j = parse_object(line);
  const Json& op = field(j, "op");
  if (op == "error") {
    const std::string kind = j.value("kind", std::string("unknown"));
    const std::string message = j.value("message", std::string("(no message)"));
    if (kind == "domain") throw DomainError("bridge: " + message);
    throw BridgeError("bridge " + kind + " error: " + message);
  }
  if (op != "trace") throw BridgeError("expected a trace reply");
  const Json& signals = field(j, "signals");
  if (!signals.is_object()) throw BridgeError("trace 'signals' must be an object");
  for (const auto& [name, _] : signals.items()) {
    bool declared = false;
    for (const auto& d : schema) declared = declared || d.name == name;
    if (!declared) throw SchemaError("bridge trace carries undeclared signal '" + name + "'");
  }

  std::vector<Signal> out;
  for (const auto& decl : schema) {
    auto it = signals.find(decl.name);
    if (it == signals.end()) throw SchemaError("bridge trace lacks signal '" + decl.name + "'");
    if (!it->is_array()) throw SchemaError("signal '" + decl.name + "' must be an array of samples");
    if (it->size() != expected_length) {
      throw ArgumentError("signal '" + decl.name + "' has " + std::to_string(it->size()) + " samples, expected " +
                          std::to_string(expected_length));
    }
    Signal s{decl.name, decl.dim, {}};
    s.data.reserve(expected_length * decl.dim);
    for (const auto& row : *it) append_sample(row, decl.dim, decl.name, s.data);
    out.push_back(std::move(s));
  }

  double period = 1.0;
  if (auto t = j.find("time"); t != j.end() && !t->is_null()) {
    if (!t->is_array() || t->size() != expected_length) throw BridgeError("trace 'time' must have one entry per sample");
    if (expected_length >= 2) {
      const double t0 = number((*t)[0], "time");
      period = number((*t)[1], "time") - t0;
      for (std::size_t i = 1; i < expected_length; ++i) {
        const double expected = t0 + static_cast<double>(i) * period;
        if (std::abs(number((*t)[i], "time") - expected) > 1e-6 * std::max(std::abs(period) * static_cast<double>(i), 1e-300)) {
          throw SamplingError("bridge trace time column is not uniformly spaced");
        }
      }
    }
  }
  return Trace(period, expected_length, std::move(out));
}

Handshake make_handshake(const envs::Environment& env) {
  const TaskSpec& task = env.task();
  Handshake h;
  h.name = task.name;
  h.input_dim = task.input_box.dim();
  for (const auto& d : task.input_box.dims()) h.bounds.emplace_back(d.lo, d.hi);
  h.signals = task.signal_schema;
  h.episode_steps = task.episode_steps;
  return h;
}

std::string encode_handshake(const Handshake& h) {
  Json signals = Json::array();
  for (const auto& s : h.signals) signals.push_back({{"name", s.name}, {"dim", s.dim}});
  Json bounds = Json::array();
  for (const auto& [lo, hi] : h.bounds) bounds.push_back({lo, hi});
  Json j = {{"op", "hello"},         {"name", h.name},         {"input_dim", h.input_dim},
            {"bounds", bounds},      {"signals", signals},     {"episode_steps", h.episode_steps},
            {"protocol_version", h.protocol_version}};
  return j.dump();
}

std::string encode_trace(const Trace& trace) {
  Json signals = Json::object();
  for (const auto& s : trace.signals()) {
    Json rows = Json::array();
    for (std::size_t t = 0; t < trace.length(); ++t) {
      rows.push_back(std::vector<double>(s.data.begin() + static_cast<std::ptrdiff_t>(t * s.dim),
                                         s.data.begin() + static_cast<std::ptrdiff_t>((t + 1) * s.dim)));
    }
    signals[s.name] = std::move(rows);
  }
  Json time = Json::array();
  for (std::size_t t = 0; t < trace.length(); ++t) time.push_back(static_cast<double>(t) * trace.sample_period());
  Json j = {{"op", "trace"}, {"signals", std::move(signals)}, {"time", std::move(time)}};
  return j.dump();
}

std::string encode_error(std::string_view kind, std::string_view message) {
  Json j = {{"op", "error"}, {"kind", kind}, {"message", message}};
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string serve_line(envs::Environment& env, std::string_view line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded()) return encode_error("protocol", "malformed JSON");
  if (!j.is_object()) return encode_error("protocol", "request must be a JSON object");
  auto op = j.find("op");
  if (op == j.end() || !op->is_string()) return encode_error("protocol", "request lacks a string 'op'");
  const std::string name = op->get<std::string>();
  if (name == "hello") return encode_handshake(make_handshake(env));
  if (name == "close") return {};
  if (name != "simulate") return encode_error("protocol", "unknown op '" + name + "'");

  auto input = j.find("input");
  if (input == j.end() || !input->is_array()) return encode_error("protocol", "simulate needs an 'input' array");
  InputVector x;
  for (const auto& v : *input) {
    if (!v.is_number()) return encode_error("protocol", "input entries must be numbers");
    x.values.push_back(v.get<double>());
  }
  std::uint64_t seed = 0;
  if (auto s = j.find("seed"); s != j.end()) {
    if (!s->is_number_unsigned()) return encode_error("protocol", "seed must be a non-negative integer");
    seed = s->get<std::uint64_t>();
  }
  if (x.size() != env.task().input_box.dim() || !env.task().input_box.contains(x)) {
    return encode_error("domain", "input outside the declared bounds");
  }
  try {
    return encode_trace(env.simulate(x, seed));
  } catch (const DomainError& e) {
    return encode_error("domain", e.what());
  } catch (const std::exception& e) {
    return encode_error("simulation", e.what());
  }
}

}  // namespace stlf::bridge
