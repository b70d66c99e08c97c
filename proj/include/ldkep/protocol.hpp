#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldkep/ld_context.hpp"
#include "ldkep/treeword.hpp"

namespace ldkep {

// Two-pool key establishment over any carrier with the cross-distributive
// laws. A single-operation LD-system runs the same engine with both pools
// equal to {*}.
//
//   Alice: secret (a0 in S_A as a tree, a, *_alpha in O_A)
//          sends a *_alpha t_1 ... a *_alpha t_n and p0 = a *_alpha a0.
//   Bob:   secret (b in S_B as a tree, *_beta in O_B)
//          sends b *_beta s_1 ... b *_beta s_m.
//   Keys:  K_A = a *_alpha (b *_beta a0),  K_B = (a *_alpha b) *_beta p0.

struct ProtocolOptions {
  unsigned leaf_min = 0;  // 0 = platform default (finite 4..8, braid 3..5)
  unsigned leaf_max = 0;
  std::size_t word_length = 0;  // braid sampler override
  std::string hash_id = "sha256";
};

struct PublicParams {
  LDContext ctx;
  std::vector<Element> basis_a;  // s_1 .. s_m
  std::vector<Element> basis_b;  // t_1 .. t_n
  unsigned leaf_min = 4, leaf_max = 8;
  std::string hash_id = "sha256";
  // Braid carriers pin two strand counts: wire_strands (N) is where message
  // elements are normalized for serialization; key_strands is the larger
  // ambient group where the derived key is normalized (finishing shifts the
  // received words further up, so it needs headroom above N).
  unsigned wire_strands = 0;
  unsigned key_strands = 0;
  std::uint64_t setup_seed = 0;

  unsigned m() const { return static_cast<unsigned>(basis_a.size()); }
  unsigned n() const { return static_cast<unsigned>(basis_b.size()); }

  // Build params from a context descriptor: basis elements are drawn from the
  // carrier sampler seeded with `setup_seed`, so two peers with the same
  // descriptor, sizes and seed agree on all public data.
  static PublicParams make(const std::string& descriptor, unsigned m, unsigned n,
                           std::uint64_t setup_seed, const ProtocolOptions& options = {});

  // Canonical serialization of a message element (braids at wire_strands).
  std::string canonical_text(const Element& e) const;
  // Canonical serialization of a derived key (braids at key_strands).
  std::string canonical_key_text(const Element& e) const;
  Element element_from_wire(const std::string& text) const;
};

struct AliceSecret {
  TreeWord a0_tree;       // over basis_a, ops in pool A
  Element a;
  std::size_t alpha = 0;  // op index in pool A
};

struct BobSecret {
  TreeWord b_tree;        // over basis_b, ops in pool B
  std::size_t beta = 0;   // op index in pool B
};

struct MessageA {
  std::vector<Element> t_images;  // a *_alpha t_j, j = 1..n
  Element p0;
};

struct MessageB {
  std::vector<Element> s_images;  // b *_beta s_i, i = 1..m
};

struct SharedKey {
  Element value;
  std::string canonical;
};

struct Transcript {
  MessageA msg_a;
  MessageB msg_b;
  std::optional<std::string> confirm_a, confirm_b;
};

class key_mismatch_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AliceSecret keygen_alice(const PublicParams& params, std::uint64_t seed);
BobSecret keygen_bob(const PublicParams& params, std::uint64_t seed);

// Step-2 messages; braid elements are replaced by their canonical words at the
// pinned strand count before leaving the party.
MessageA alice_message(const PublicParams& params, const AliceSecret& secret);
MessageB bob_message(const PublicParams& params, const BobSecret& secret);

SharedKey alice_finish(const PublicParams& params, const AliceSecret& secret,
                       const MessageB& from_bob);
SharedKey bob_finish(const PublicParams& params, const BobSecret& secret,
                     const MessageA& from_alice);

// Key-confirmation digest of the canonical serialization.
std::string confirm_digest(const SharedKey& key, const PublicParams& params);

struct LocalRun {
  Transcript transcript;
  SharedKey key_a, key_b;
};

// All four steps in process; throws key_mismatch_error if the two parties
// disagree (which means the supplied context violated its cross laws).
LocalRun run_local(const PublicParams& params, std::uint64_t seed_alice, std::uint64_t seed_bob);

}  // namespace ldkep
