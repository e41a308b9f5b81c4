#include "stlf/bridge/transport.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <sstream>
#include <thread>
#include <vector>

#include "stlf/errors.hpp"

extern char** environ;

namespace stlf::bridge {

namespace {

std::string errno_text() { return std::strerror(errno); }

// Writes everything, turning a broken pipe into BridgeError instead of a
// process-wide SIGPIPE.
void write_all(int fd, std::string_view data, bool socket) {
  sigset_t block, old;
  sigemptyset(&block);
  sigaddset(&block, SIGPIPE);
  pthread_sigmask(SIG_BLOCK, &block, &old);
  bool broken = false;
  while (!data.empty()) {
    const ssize_t n = socket ? ::send(fd, data.data(), data.size(), MSG_NOSIGNAL) : ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      broken = true;
      break;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  if (broken) {
    const timespec zero{0, 0};
    sigtimedwait(&block, nullptr, &zero);  // drop the pending SIGPIPE, if any
  }
  pthread_sigmask(SIG_SETMASK, &old, nullptr);
  if (broken) throw BridgeError("bridge connection lost while sending: " + errno_text());
}

class LineReader {
 public:
  std::string next(int fd, std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw BridgeError("bridge timed out after " + std::to_string(timeout.count()) + " ms");
      pollfd p{fd, POLLIN, 0};
      const int r = ::poll(&p, 1, static_cast<int>(left.count()));
      if (r < 0) {
        if (errno == EINTR) continue;
        throw BridgeError("bridge poll failed: " + errno_text());
      }
      if (r == 0) continue;
      char chunk[65536];
      const ssize_t n = ::read(fd, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw BridgeError("bridge read failed: " + errno_text());
      }
      if (n == 0) throw BridgeError("bridge closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  std::string buffer_;
};

class ProcessTransport final : public Transport {
 public:
  explicit ProcessTransport(const std::vector<std::string>& argv) {
    int in[2], out[2];
    if (::pipe2(in, O_CLOEXEC) != 0) throw BridgeError("pipe failed: " + errno_text());
    if (::pipe2(out, O_CLOEXEC) != 0) {
      ::close(in[0]);
      ::close(in[1]);
      throw BridgeError("pipe failed: " + errno_text());
    }
    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_adddup2(&fa, in[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&fa, out[1], STDOUT_FILENO);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    const int rc = posix_spawnp(&pid_, args[0], &fa, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&fa);
    ::close(in[0]);
    ::close(out[1]);
    if (rc != 0) {
      ::close(in[1]);
      ::close(out[0]);
      throw BridgeError("cannot start bridge command '" + argv[0] + "': " + std::strerror(rc));
    }
    to_child_ = in[1];
    from_child_ = out[0];
  }

  ~ProcessTransport() override { close(); }

  void send_line(std::string_view line) override {
    if (to_child_ < 0) throw BridgeError("bridge connection is closed");
    std::string msg(line);
    msg.push_back('\n');
    write_all(to_child_, msg, false);
  }

  std::string recv_line(std::chrono::milliseconds timeout) override {
    if (from_child_ < 0) throw BridgeError("bridge connection is closed");
    return reader_.next(from_child_, timeout);
  }

  void close() noexcept override {
    if (to_child_ >= 0) ::close(to_child_);
    if (from_child_ >= 0) ::close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
      // Closed stdin asks the server to exit; give it a moment, then kill.
      int status = 0;
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, &status, WNOHANG) != 0) {
          pid_ = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  LineReader reader_;
};

class SocketTransport final : public Transport {
 public:
  SocketTransport(const std::string& host, const std::string& port, std::chrono::milliseconds timeout) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res);
    if (rc != 0) throw BridgeError("cannot resolve " + host + ": " + gai_strerror(rc));
    std::string last_error = "no address";
    for (addrinfo* a = res; a != nullptr && fd_ < 0; a = a->ai_next) {
      const int fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
      if (fd < 0) continue;
      if (connect_with_timeout(fd, a, timeout, last_error)) {
        fd_ = fd;
      } else {
        ::close(fd);
      }
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) throw BridgeError("cannot connect to " + host + ":" + port + ": " + last_error);
  }

  ~SocketTransport() override { close(); }

  void send_line(std::string_view line) override {
    if (fd_ < 0) throw BridgeError("bridge connection is closed");
    std::string msg(line);
    msg.push_back('\n');
    write_all(fd_, msg, true);
  }

  std::string recv_line(std::chrono::milliseconds timeout) override {
    if (fd_ < 0) throw BridgeError("bridge connection is closed");
    return reader_.next(fd_, timeout);
  }

  void close() noexcept override {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  static bool connect_with_timeout(int fd, const addrinfo* a, std::chrono::milliseconds timeout, std::string& error) {
    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, a->ai_addr, a->ai_addrlen);
    if (rc != 0 && errno == EINPROGRESS) {
      pollfd p{fd, POLLOUT, 0};
      rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
      if (rc == 0) {
        error = "connection timed out";
        return false;
      }
      int err = 0;
      socklen_t len = sizeof err;
      ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
      if (err != 0) {
        error = std::strerror(err);
        return false;
      }
      rc = 0;
    }
    if (rc != 0) {
      error = errno_text();
      return false;
    }
    ::fcntl(fd, F_SETFL, flags);
    return true;
  }

  int fd_ = -1;
  LineReader reader_;
};

}  // namespace

std::unique_ptr<Transport> open_transport(const std::string& endpoint, std::chrono::milliseconds connect_timeout) {
  if (endpoint.rfind("stdio:", 0) == 0) {
    std::istringstream in(endpoint.substr(6));
    std::vector<std::string> argv;
    for (std::string arg; in >> arg;) argv.push_back(arg);
    if (argv.empty()) throw BridgeError("endpoint '" + endpoint + "' names no command");
    return std::make_unique<ProcessTransport>(argv);
  }
  if (endpoint.rfind("tcp:", 0) == 0) {
    const std::string rest = endpoint.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size()) {
      throw BridgeError("endpoint '" + endpoint + "' is not tcp:HOST:PORT");
    }
    std::string host = rest.substr(0, colon);
    if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
    return std::make_unique<SocketTransport>(host, rest.substr(colon + 1), connect_timeout);
  }
  throw BridgeError("endpoint '" + endpoint + "' must start with stdio: or tcp:");
}

}  // namespace stlf::bridge
