#include "ldkep/wire.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/select.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>

namespace ldkep::wire {

namespace {

bool is_canonical_count(const std::string& s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return s.size() <= 9;
}

std::vector<std::string> split_single_spaces(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t sp = line.find(' ', start);
    if (sp == std::string::npos) { out.push_back(line.substr(start)); break; }
    out.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
  return out;
}

std::string elt_line(const std::string& name, const std::string& payload) {
  std::size_t tokens = payload.empty() ? 0 : 1 + static_cast<std::size_t>(
                                                 std::count(payload.begin(), payload.end(), ' '));
  std::string line = "ELT " + name + " " + std::to_string(tokens);
  if (!payload.empty()) line += " " + payload;
  return line;
}

// Parse one ELT line with an expected name; returns the payload. Rejects
// anything that does not reassemble byte for byte.
std::string parse_elt(const std::string& line, const std::string& expected_name) {
  std::vector<std::string> tok = split_single_spaces(line);
  if (tok.size() < 3 || tok[0] != "ELT") throw wire_error("expected an ELT line");
  if (tok[1] != expected_name)
    throw wire_error("expected element '" + expected_name + "', got '" + tok[1] + "'");
  if (!is_canonical_count(tok[2])) throw wire_error("malformed element length");
  std::size_t len = std::stoul(tok[2]);
  if (tok.size() != 3 + len) throw wire_error("element length disagrees with payload");
  std::string payload;
  for (std::size_t i = 3; i < tok.size(); ++i) {
    if (i > 3) payload += ' ';
    if (tok[i].empty()) throw wire_error("empty payload token");
    payload += tok[i];
  }
  if (elt_line(expected_name, payload) != line) throw wire_error("non-canonical ELT line");
  return payload;
}

Element element_from_payload(const PublicParams& params, const std::string& payload) {
  try {
    return params.element_from_wire(payload);
  } catch (const std::exception& e) {
    throw wire_error(std::string("bad element payload: ") + e.what());
  }
}

}  // namespace

std::string hello_line(const PublicParams& params, bool as_alice) {
  return std::string("LDKEP/1 HELLO role=") + (as_alice ? "alice" : "bob") +
         " ctx=" + params.ctx.descriptor() + " m=" + std::to_string(params.m()) +
         " n=" + std::to_string(params.n()) + " N=" + std::to_string(params.wire_strands) +
         " hash=" + params.hash_id;
}

void check_hello(const std::string& line, const PublicParams& params, bool expect_alice) {
  std::string expected = hello_line(params, expect_alice);
  if (line == expected) return;
  std::string role_prefix = std::string("LDKEP/1 HELLO role=") + (expect_alice ? "alice" : "bob") + " ";
  if (line.rfind(role_prefix, 0) == 0)
    throw peer_mismatch_error("peer parameters disagree: got '" + line + "'");
  throw wire_error("malformed HELLO: '" + line + "'");
}

std::vector<std::string> pub_lines_alice(const PublicParams& params, const MessageA& msg) {
  if (msg.t_images.size() != params.n()) throw std::invalid_argument("message size mismatch");
  std::vector<std::string> lines;
  lines.push_back("LDKEP/1 PUB role=alice count=" + std::to_string(params.n() + 1));
  for (unsigned j = 0; j < params.n(); ++j)
    lines.push_back(elt_line("at" + std::to_string(j + 1), params.canonical_text(msg.t_images[j])));
  lines.push_back(elt_line("p0", params.canonical_text(msg.p0)));
  return lines;
}

std::vector<std::string> pub_lines_bob(const PublicParams& params, const MessageB& msg) {
  if (msg.s_images.size() != params.m()) throw std::invalid_argument("message size mismatch");
  std::vector<std::string> lines;
  lines.push_back("LDKEP/1 PUB role=bob count=" + std::to_string(params.m()));
  for (unsigned i = 0; i < params.m(); ++i)
    lines.push_back(elt_line("bs" + std::to_string(i + 1), params.canonical_text(msg.s_images[i])));
  return lines;
}

MessageA parse_pub_alice(const std::vector<std::string>& lines, const PublicParams& params) {
  if (lines.empty() ||
      lines[0] != "LDKEP/1 PUB role=alice count=" + std::to_string(params.n() + 1))
    throw wire_error("bad PUB header from alice");
  if (lines.size() != params.n() + 2) throw wire_error("wrong PUB element count");
  MessageA msg;
  for (unsigned j = 0; j < params.n(); ++j)
    msg.t_images.push_back(
        element_from_payload(params, parse_elt(lines[j + 1], "at" + std::to_string(j + 1))));
  msg.p0 = element_from_payload(params, parse_elt(lines.back(), "p0"));
  return msg;
}

MessageB parse_pub_bob(const std::vector<std::string>& lines, const PublicParams& params) {
  if (lines.empty() || lines[0] != "LDKEP/1 PUB role=bob count=" + std::to_string(params.m()))
    throw wire_error("bad PUB header from bob");
  if (lines.size() != params.m() + 1) throw wire_error("wrong PUB element count");
  MessageB msg;
  for (unsigned i = 0; i < params.m(); ++i)
    msg.s_images.push_back(
        element_from_payload(params, parse_elt(lines[i + 1], "bs" + std::to_string(i + 1))));
  return msg;
}

std::string confirm_line(const std::string& keyhash_hex) {
  return "LDKEP/1 CONFIRM keyhash=" + keyhash_hex;
}

std::string parse_confirm(const std::string& line) {
  const std::string prefix = "LDKEP/1 CONFIRM keyhash=";
  if (line.rfind(prefix, 0) != 0) throw wire_error("expected CONFIRM: '" + line + "'");
  std::string hex = line.substr(prefix.size());
  if (hex.size() != 64) throw wire_error("keyhash must be 64 hex digits");
  for (char c : hex)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
      throw wire_error("keyhash must be lowercase hex");
  return hex;
}

std::string serialize_frame(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) { out += l; out += '\n'; }
  out += "end\n";
  return out;
}

// --- sockets -------------------------------------------------------------------

namespace {

struct Connection {
  int fd = -1;
  std::string buffer;

  explicit Connection(int f) : fd(f) {}
  ~Connection() {
    if (fd >= 0) ::close(fd);
  }
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;

  void set_timeout(unsigned seconds) {
    timeval tv{static_cast<time_t>(seconds), 0};
    setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  }

  void send_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
      if (n <= 0) throw wire_error("send failed or timed out");
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    for (;;) {
      std::size_t nl = buffer.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        if (line.size() > 1 << 20) throw wire_error("line too long");
        return line;
      }
      char chunk[4096];
      ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
      if (n <= 0) throw wire_error("connection closed or timed out mid-frame");
      buffer.append(chunk, static_cast<std::size_t>(n));
      if (buffer.size() > 16u << 20) throw wire_error("frame too large");
    }
  }

  std::vector<std::string> read_frame() {
    std::vector<std::string> lines;
    for (;;) {
      std::string line = read_line();
      if (line == "end") return lines;
      lines.push_back(std::move(line));
      if (lines.size() > 10000) throw wire_error("frame has too many lines");
    }
  }

  void send_frame(const std::vector<std::string>& lines) { send_all(serialize_frame(lines)); }

  void send_error(const std::string& msg) {
    try {
      send_frame({"LDKEP/1 ERROR msg=" + msg});
    } catch (...) {
      // peer already gone; nothing to do
    }
  }
};

void throw_if_error_frame(const std::vector<std::string>& lines) {
  if (!lines.empty() && lines[0].rfind("LDKEP/1 ERROR ", 0) == 0)
    throw wire_error("peer reported: " + lines[0]);
}

SessionOutcome run_session(Connection& conn, const PublicParams& params, bool as_alice,
                           std::uint64_t key_seed, bool we_speak_first) {
  try {
    // HELLO exchange; the connecting side speaks first.
    if (we_speak_first) {
      conn.send_frame({hello_line(params, as_alice)});
      auto frame = conn.read_frame();
      throw_if_error_frame(frame);
      if (frame.size() != 1) throw wire_error("HELLO frame must be a single line");
      check_hello(frame[0], params, !as_alice);
    } else {
      auto frame = conn.read_frame();
      throw_if_error_frame(frame);
      if (frame.size() != 1) throw wire_error("HELLO frame must be a single line");
      check_hello(frame[0], params, !as_alice);
      conn.send_frame({hello_line(params, as_alice)});
    }

    SessionOutcome outcome;
    if (as_alice) {
      AliceSecret secret = keygen_alice(params, key_seed);
      MessageA ours = alice_message(params, secret);
      outcome.sent_pub = pub_lines_alice(params, ours);
      conn.send_frame(outcome.sent_pub);
      outcome.received_pub = conn.read_frame();
      throw_if_error_frame(outcome.received_pub);
      MessageB theirs = parse_pub_bob(outcome.received_pub, params);
      SharedKey key = alice_finish(params, secret, theirs);
      outcome.local_hash = confirm_digest(key, params);
      outcome.local_key_canonical = key.canonical;
      conn.send_frame({confirm_line(outcome.local_hash)});
      auto confirm = conn.read_frame();
      throw_if_error_frame(confirm);
      if (confirm.size() != 1) throw wire_error("CONFIRM frame must be a single line");
      outcome.remote_hash = parse_confirm(confirm[0]);
    } else {
      BobSecret secret = keygen_bob(params, key_seed);
      outcome.received_pub = conn.read_frame();
      throw_if_error_frame(outcome.received_pub);
      MessageA theirs = parse_pub_alice(outcome.received_pub, params);
      MessageB ours = bob_message(params, secret);
      outcome.sent_pub = pub_lines_bob(params, ours);
      conn.send_frame(outcome.sent_pub);
      SharedKey key = bob_finish(params, secret, theirs);
      outcome.local_hash = confirm_digest(key, params);
      outcome.local_key_canonical = key.canonical;
      auto confirm = conn.read_frame();
      throw_if_error_frame(confirm);
      if (confirm.size() != 1) throw wire_error("CONFIRM frame must be a single line");
      outcome.remote_hash = parse_confirm(confirm[0]);
      conn.send_frame({confirm_line(outcome.local_hash)});
    }
    outcome.hash_match = outcome.local_hash == outcome.remote_hash;
    return outcome;
  } catch (const wire_error& e) {
    conn.send_error(e.what());
    throw;
  } catch (const peer_mismatch_error& e) {
    conn.send_error(e.what());
    throw;
  }
}

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (host.empty() || host == "*") {
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    return addr;
  }
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{}, *res = nullptr;
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res)
    throw wire_error("cannot resolve host '" + host + "'");
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  freeaddrinfo(res);
  return addr;
}

}  // namespace

Listener::Listener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw wire_error("socket() failed");
  int one = 1;
  setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = resolve(host, port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw wire_error("bind failed on " + host + ":" + std::to_string(port));
  }
  if (::listen(fd_, 1) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw wire_error("listen failed");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

Listener::~Listener() {
  if (fd_ >= 0) ::close(fd_);
}

SessionOutcome serve_session(const Listener& listener, const PublicParams& params, bool as_alice,
                             std::uint64_t key_seed, unsigned timeout_seconds) {
  fd_set fds;
  FD_ZERO(&fds);
  FD_SET(listener.fd(), &fds);
  timeval tv{static_cast<time_t>(timeout_seconds), 0};
  int ready = ::select(listener.fd() + 1, &fds, nullptr, nullptr, &tv);
  if (ready <= 0) throw wire_error("timed out waiting for a connection");
  int client = ::accept(listener.fd(), nullptr, nullptr);
  if (client < 0) throw wire_error("accept failed");
  Connection conn(client);
  conn.set_timeout(timeout_seconds);
  return run_session(conn, params, as_alice, key_seed, /*we_speak_first=*/false);
}

SessionOutcome connect_session(const std::string& host, std::uint16_t port,
                               const PublicParams& params, bool as_alice, std::uint64_t key_seed,
                               unsigned timeout_seconds) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw wire_error("socket() failed");
  sockaddr_in addr = resolve(host.empty() ? "127.0.0.1" : host, port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw wire_error("connect failed to " + host + ":" + std::to_string(port));
  }
  Connection conn(fd);
  conn.set_timeout(timeout_seconds);
  return run_session(conn, params, as_alice, key_seed, /*we_speak_first=*/true);
}

}  // namespace ldkep::wire
