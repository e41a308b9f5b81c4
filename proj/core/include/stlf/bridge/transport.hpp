#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

namespace stlf::bridge {

/// Bidirectional line channel to a bridge server.
class Transport {
 public:
  virtual ~Transport() = default;

  /// Sends `line` followed by `\n`. Throws BridgeError when the peer is gone.
  virtual void send_line(std::string_view line) = 0;

  /// Next line without its terminator. Throws BridgeError on timeout or when
  /// the peer closes the channel.
  virtual std::string recv_line(std::chrono::milliseconds timeout) = 0;

  /// Idempotent; releases the channel and reaps a spawned process.
  virtual void close() noexcept = 0;
};

/// Opens an endpoint:
///   stdio:CMD ARGS...   spawn CMD (PATH lookup, whitespace-separated args)
///                       and talk over its stdin/stdout
///   tcp:HOST:PORT       connect a TCP socket
/// Throws BridgeError on malformed endpoints or connection failure.
std::unique_ptr<Transport> open_transport(const std::string& endpoint, std::chrono::milliseconds connect_timeout);

}  // namespace stlf::bridge
