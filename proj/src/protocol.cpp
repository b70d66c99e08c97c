#include "ldkep/protocol.hpp"

#include <algorithm>

#include "ldkep/digest.hpp"
#include "ldkep/garside.hpp"

namespace ldkep {

namespace {

Element canonicalized(const PublicParams& params, Element e) {
  if (params.ctx.carrier() == CarrierKind::Braid)
    return std::get<BraidValue>(e).at_strands(params.wire_strands);
  return e;
}

SharedKey make_key(const PublicParams& params, Element value) {
  SharedKey key;
  if (params.ctx.carrier() == CarrierKind::Braid)
    value = std::get<BraidValue>(value).at_strands(params.key_strands);
  key.value = std::move(value);
  key.canonical = params.canonical_key_text(key.value);
  return key;
}

}  // namespace

PublicParams PublicParams::make(const std::string& descriptor, unsigned m, unsigned n,
                                std::uint64_t setup_seed, const ProtocolOptions& options) {
  if (m < 1 || n < 1) throw std::invalid_argument("need m, n >= 1");
  PublicParams p;
  p.ctx = LDContext::from_descriptor(descriptor);
  p.setup_seed = setup_seed;
  p.hash_id = options.hash_id;
  if (p.hash_id != "sha256") throw std::invalid_argument("unsupported hash id");

  bool braid = p.ctx.carrier() == CarrierKind::Braid;
  p.leaf_min = options.leaf_min ? options.leaf_min : (braid ? 3u : 4u);
  p.leaf_max = options.leaf_max ? options.leaf_max : (braid ? 5u : 8u);
  if (p.leaf_min < 1 || p.leaf_min > p.leaf_max) throw std::invalid_argument("bad leaf bounds");

  if (braid) {
    BraidSampler sampler = p.ctx.braid_sampler();
    if (options.word_length) sampler.length = options.word_length;
    p.ctx.set_sampler(sampler);
    unsigned shift = 0;
    for (const LDOp& op : p.ctx.ops())
      if (std::holds_alternative<BraidOpSpec>(op.spec))
        shift = std::max(shift, std::get<BraidOpSpec>(op.spec).shift_amount);
    unsigned base = sampler.mode == BraidSampler::Mode::Pure ? sampler.strands - 1
                                                             : sampler.max_index;
    if (shift > 0) base = std::max(base, shift - 1);
    // Message elements nest at most leaf_max ops on top of sampled words
    // (p0 = a * eval(tree)), each op raising indices by `shift`. Finishing
    // nests another leaf_max ops on top of received canonical words, which
    // saturate indices up to wire_strands - 1.
    p.wire_strands = base + shift * p.leaf_max + 1;
    p.key_strands = p.wire_strands + shift * p.leaf_max;
  }

  if (p.ctx.side_ops(OpSide::A).empty() || p.ctx.side_ops(OpSide::B).empty())
    throw std::invalid_argument("context must offer ops in both pools");

  Rng rng(setup_seed);
  Rng rng_a = rng.fork();
  Rng rng_b = rng.fork();
  for (unsigned i = 0; i < m; ++i) p.basis_a.push_back(p.ctx.sample(rng_a));
  for (unsigned j = 0; j < n; ++j) p.basis_b.push_back(p.ctx.sample(rng_b));
  return p;
}

std::string PublicParams::canonical_text(const Element& e) const {
  if (ctx.carrier() == CarrierKind::Braid)
    return std::get<BraidValue>(e).at_strands(wire_strands).word().to_text();
  return ctx.to_text(e);
}

std::string PublicParams::canonical_key_text(const Element& e) const {
  if (ctx.carrier() == CarrierKind::Braid)
    return std::get<BraidValue>(e).at_strands(key_strands).word().to_text();
  return ctx.to_text(e);
}

Element PublicParams::element_from_wire(const std::string& text) const {
  if (ctx.carrier() == CarrierKind::Braid) {
    BraidWord w = BraidWord::from_text(text, true);
    if (w.max_index() + 1 > wire_strands)
      throw std::invalid_argument("braid letter outside the pinned strand count");
    return BraidValue::from_word(w);
  }
  return ctx.element_from_text(text);
}

AliceSecret keygen_alice(const PublicParams& params, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> pool = params.ctx.side_ops(OpSide::A);
  AliceSecret s;
  std::size_t leaves = rng.in_range(params.leaf_min, params.leaf_max);
  s.a0_tree = random_tree(rng, leaves, params.m(), pool);
  s.a = params.ctx.sample(rng);
  s.alpha = pool[rng.below(pool.size())];
  return s;
}

BobSecret keygen_bob(const PublicParams& params, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> pool = params.ctx.side_ops(OpSide::B);
  BobSecret s;
  std::size_t leaves = rng.in_range(params.leaf_min, params.leaf_max);
  s.b_tree = random_tree(rng, leaves, params.n(), pool);
  s.beta = pool[rng.below(pool.size())];
  return s;
}

MessageA alice_message(const PublicParams& params, const AliceSecret& secret) {
  MessageA msg;
  for (const Element& t : params.basis_b)
    msg.t_images.push_back(canonicalized(params, params.ctx.apply(secret.alpha, secret.a, t)));
  SubmagmaBasis basis{params.basis_a, OpSide::A};
  Element a0 = eval_tree(secret.a0_tree, basis, params.ctx);
  msg.p0 = canonicalized(params, params.ctx.apply(secret.alpha, secret.a, a0));
  return msg;
}

MessageB bob_message(const PublicParams& params, const BobSecret& secret) {
  MessageB msg;
  SubmagmaBasis basis{params.basis_b, OpSide::B};
  Element b = eval_tree(secret.b_tree, basis, params.ctx);
  for (const Element& s : params.basis_a)
    msg.s_images.push_back(canonicalized(params, params.ctx.apply(secret.beta, b, s)));
  return msg;
}

SharedKey alice_finish(const PublicParams& params, const AliceSecret& secret,
                       const MessageB& from_bob) {
  if (from_bob.s_images.size() != params.m())
    throw std::invalid_argument("message B must carry exactly m elements");
  std::vector<Element> leaf_values;
  for (std::uint32_t g : secret.a0_tree.leaves()) {
    if (g >= from_bob.s_images.size()) throw std::out_of_range("leaf label out of range");
    leaf_values.push_back(from_bob.s_images[g]);
  }
  Element b_a0 = eval_tree_with_leaves(secret.a0_tree, leaf_values, params.ctx);
  Element k = params.ctx.apply(secret.alpha, secret.a, b_a0);
  return make_key(params, std::move(k));
}

SharedKey bob_finish(const PublicParams& params, const BobSecret& secret,
                     const MessageA& from_alice) {
  if (from_alice.t_images.size() != params.n())
    throw std::invalid_argument("message A must carry exactly n+1 elements");
  std::vector<Element> leaf_values;
  for (std::uint32_t g : secret.b_tree.leaves()) {
    if (g >= from_alice.t_images.size()) throw std::out_of_range("leaf label out of range");
    leaf_values.push_back(from_alice.t_images[g]);
  }
  Element a_b = eval_tree_with_leaves(secret.b_tree, leaf_values, params.ctx);
  Element k = params.ctx.apply(secret.beta, a_b, from_alice.p0);
  return make_key(params, std::move(k));
}

std::string confirm_digest(const SharedKey& key, const PublicParams& params) {
  if (params.hash_id != "sha256") throw std::invalid_argument("unsupported hash id");
  return sha256_hex(key.canonical);
}

LocalRun run_local(const PublicParams& params, std::uint64_t seed_alice, std::uint64_t seed_bob) {
  AliceSecret alice = keygen_alice(params, seed_alice);
  BobSecret bob = keygen_bob(params, seed_bob);
  LocalRun run;
  run.transcript.msg_a = alice_message(params, alice);
  run.transcript.msg_b = bob_message(params, bob);
  run.key_a = alice_finish(params, alice, run.transcript.msg_b);
  run.key_b = bob_finish(params, bob, run.transcript.msg_a);
  run.transcript.confirm_a = confirm_digest(run.key_a, params);
  run.transcript.confirm_b = confirm_digest(run.key_b, params);
  if (run.key_a.canonical != run.key_b.canonical)
    throw key_mismatch_error("the two parties derived different keys");
  return run;
}

}  // namespace ldkep
