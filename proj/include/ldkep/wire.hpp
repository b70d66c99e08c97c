#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldkep/protocol.hpp"

namespace ldkep::wire {

// Line-oriented UTF-8 exchange; one message per frame, each frame terminated
// by a line containing just `end`.
//
//   LDKEP/1 HELLO role=<alice|bob> ctx=<descriptor> m=<int> n=<int> N=<int> hash=<id>
//   LDKEP/1 PUB role=alice count=<n+1>   then ELT lines named at1..atn, p0
//   LDKEP/1 PUB role=bob count=<m>       then ELT lines named bs1..bsm
//   LDKEP/1 CONFIRM keyhash=<lowercase hex>
//   LDKEP/1 ERROR msg=<text>
//
// ELT lines read `ELT <name> <len> <payload>` where len is the payload token
// count; parsing is strict (exact spacing, canonical decimals), so any
// corrupted byte is rejected rather than reinterpreted.

// Malformed frame / protocol violation (CLI exit code 2).
class wire_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed but incompatible peer: context or confirm mismatch (exit 1).
class peer_mismatch_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hello_line(const PublicParams& params, bool as_alice);
void check_hello(const std::string& line, const PublicParams& params, bool expect_alice);

std::vector<std::string> pub_lines_alice(const PublicParams& params, const MessageA& msg);
std::vector<std::string> pub_lines_bob(const PublicParams& params, const MessageB& msg);
MessageA parse_pub_alice(const std::vector<std::string>& lines, const PublicParams& params);
MessageB parse_pub_bob(const std::vector<std::string>& lines, const PublicParams& params);

std::string confirm_line(const std::string& keyhash_hex);
std::string parse_confirm(const std::string& line);

// Frame text: lines joined by '\n', then the `end` line.
std::string serialize_frame(const std::vector<std::string>& lines);

// --- TCP session --------------------------------------------------------------

struct SessionOutcome {
  bool hash_match = false;
  std::string local_hash, remote_hash;
  std::string local_key_canonical;
  std::vector<std::string> sent_pub, received_pub;  // PUB frames, line by line
};

// RAII listening socket; port 0 binds an ephemeral port.
class Listener {
 public:
  Listener(const std::string& host, std::uint16_t port);
  ~Listener();
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;
  std::uint16_t port() const { return port_; }
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Accept one connection and run a full session. Throws wire_error /
// peer_mismatch_error; returns the outcome otherwise (hash_match may still be
// false if the keys disagree).
SessionOutcome serve_session(const Listener& listener, const PublicParams& params, bool as_alice,
                             std::uint64_t key_seed, unsigned timeout_seconds = 30);

SessionOutcome connect_session(const std::string& host, std::uint16_t port,
                               const PublicParams& params, bool as_alice, std::uint64_t key_seed,
                               unsigned timeout_seconds = 30);

}  // namespace ldkep::wire
