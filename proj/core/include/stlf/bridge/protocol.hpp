#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stlf/envs/environment.hpp"
#include "stlf/trace.hpp"

namespace stlf::bridge {

/// Semantic version spoken by this engine. Servers must share the major part.
inline constexpr std::string_view kProtocolVersion = "1.0.0";

/// Reply to `{"op":"hello"}`.
struct Handshake {
  std::string name;
  std::size_t input_dim = 0;
  std::vector<std::pair<double, double>> bounds;
  SignalSchema signals;
  std::size_t episode_steps = 0;
  std::string protocol_version{kProtocolVersion};

  bool operator==(const Handshake&) const = default;
};

// Requests. Every message is one JSON object on one line.

std::string encode_hello();
std::string encode_simulate(const InputVector& input, std::uint64_t seed);
std::string encode_close();

/// Throws BridgeError on malformed JSON, a missing or ill-typed field,
/// inconsistent bounds, or an incompatible protocol version.
Handshake parse_handshake(std::string_view line);

/// Decodes a reply to a simulate request.
///
/// `{"op":"trace","signals":{name: [[...], ...]},"time":[...]}` becomes a
/// Trace; scalar signals may also be flat arrays. The period is the spacing
/// of "time" (uniform within 1e-6 relative), or 1 when absent.
/// Throws SchemaError naming the first signal that is missing, undeclared or
/// of the wrong dimension, ArgumentError on a wrong length, DomainError for
/// an error reply of kind "domain", and BridgeError for other error replies
/// and malformed messages.
Trace parse_trace_reply(std::string_view line, const SignalSchema& schema, std::size_t expected_length);

// Server side, used by in-process fixtures and protocol tests.

Handshake make_handshake(const envs::Environment& env);
std::string encode_handshake(const Handshake& h);
std::string encode_trace(const Trace& trace);
std::string encode_error(std::string_view kind, std::string_view message);

/// Answers one request line for `env`. Returns the reply line, or an empty
/// string for a close request. Never throws: malformed input, unknown ops and
/// simulation failures become error replies (kinds "protocol", "domain",
/// "simulation").
std::string serve_line(envs::Environment& env, std::string_view line);

}  // namespace stlf::bridge
