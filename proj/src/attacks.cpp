#include "ldkep/attacks.hpp"

#include <map>
#include <stdexcept>

#include "ldkep/garside.hpp"

namespace ldkep {

namespace {

void require_finite(const LDContext& ctx) {
  if (!ctx.carrier_size())
    throw std::invalid_argument("brute-force search needs a finite carrier");
}

std::vector<Element> carrier_elements(const LDContext& ctx) {
  require_finite(ctx);
  std::vector<Element> out;
  out.reserve(*ctx.carrier_size());
  for (std::size_t i = 0; i < *ctx.carrier_size(); ++i) out.push_back(ctx.carrier_element(i));
  return out;
}

bool matches_all(const LDContext& ctx, std::size_t op,
                 const std::vector<std::pair<Element, Element>>& pairs, const Element& cand) {
  for (const auto& [s, s_img] : pairs)
    if (!ctx.equal(ctx.apply(op, cand, s), s_img)) return false;
  return true;
}

}  // namespace

std::vector<ClosureEntry> submagma_closure(const LDContext& ctx, const SubmagmaBasis& basis,
                                           std::size_t max_leaves, std::size_t element_cap) {
  require_finite(ctx);
  if (basis.elements.empty()) throw std::invalid_argument("empty basis");
  std::vector<std::size_t> ops = ctx.side_ops(basis.side);
  std::map<std::string, std::size_t> seen;  // element text -> closure index
  std::vector<ClosureEntry> closure;
  std::vector<std::vector<std::size_t>> levels(max_leaves + 1);  // indices per leaf count

  auto insert = [&](Element value, TreeWord tree, std::size_t leaves) -> bool {
    std::string key = ctx.to_text(value);
    if (seen.count(key)) return false;
    seen.emplace(std::move(key), closure.size());
    levels[leaves].push_back(closure.size());
    closure.push_back(ClosureEntry{std::move(value), std::move(tree)});
    return closure.size() >= element_cap;
  };

  for (std::size_t g = 0; g < basis.elements.size(); ++g)
    if (insert(basis.elements[g], TreeWord::leaf(static_cast<std::uint32_t>(g)), 1))
      return closure;

  for (std::size_t k = 2; k <= max_leaves; ++k) {
    for (std::size_t lk = 1; lk < k; ++lk) {
      std::size_t rk = k - lk;
      // take snapshots: entries discovered at exactly lk and rk leaves
      for (std::size_t li : levels[lk])
        for (std::size_t ri : levels[rk])
          for (std::size_t op : ops) {
            Element v = ctx.apply(op, closure[li].value, closure[ri].value);
            TreeWord t = TreeWord::node(static_cast<std::uint32_t>(op), closure[li].tree,
                                        closure[ri].tree);
            if (insert(std::move(v), std::move(t), k)) return closure;
          }
    }
    if (levels[k].empty()) break;  // closure saturated
  }
  return closure;
}

std::optional<SimLDPSolution> brute_simldp(const LDPInstance& inst) {
  const LDContext& ctx = *inst.ctx;
  std::vector<std::size_t> ops = ctx.side_ops(inst.op_pool);
  if (ops.empty()) throw std::invalid_argument("no ops in the requested pool");
  std::uint64_t tested = 0;

  auto try_candidate = [&](const Element& cand,
                           const std::optional<TreeWord>& witness) -> std::optional<SimLDPSolution> {
    for (std::size_t op : ops) {
      ++tested;
      if (matches_all(ctx, op, inst.pairs, cand))
        return SimLDPSolution{cand, op, witness, tested};
    }
    return std::nullopt;
  };

  if (inst.domain.kind == SearchDomain::Kind::Carrier) {
    for (const Element& cand : carrier_elements(ctx))
      if (auto sol = try_candidate(cand, std::nullopt)) return sol;
    return std::nullopt;
  }
  std::vector<ClosureEntry> closure = submagma_closure(ctx, inst.domain.basis,
                                                       inst.domain.max_leaves,
                                                       inst.domain.element_cap);
  for (const ClosureEntry& entry : closure)
    if (auto sol = try_candidate(entry.value, entry.tree)) return sol;
  return std::nullopt;
}

std::optional<ModSimLDPSolution> brute_modsimldp(const ModLDPInstance& inst) {
  const LDContext& ctx = *inst.ctx;
  std::vector<std::size_t> ops = ctx.side_ops(inst.op_pool);
  if (ops.empty()) throw std::invalid_argument("no ops in the requested pool");
  std::uint64_t tested = 0;

  std::vector<ClosureEntry> closure;
  if (inst.a0_domain.kind == SearchDomain::Kind::Submagma)
    closure = submagma_closure(ctx, inst.a0_domain.basis, inst.a0_domain.max_leaves,
                               inst.a0_domain.element_cap);

  for (const Element& a : carrier_elements(ctx)) {
    for (std::size_t op : ops) {
      ++tested;
      if (!matches_all(ctx, op, inst.pairs, a)) continue;
      if (inst.a0_domain.kind == SearchDomain::Kind::Carrier) {
        for (const Element& a0 : carrier_elements(ctx)) {
          ++tested;
          if (ctx.equal(ctx.apply(op, a, a0), inst.p0))
            return ModSimLDPSolution{a, op, a0, std::nullopt, tested};
        }
      } else {
        for (const ClosureEntry& entry : closure) {
          ++tested;
          if (ctx.equal(ctx.apply(op, a, entry.value), inst.p0))
            return ModSimLDPSolution{a, op, entry.value, entry.tree, tested};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<TreeWord> membership_search(const MSPInstance& inst, std::uint64_t* tested) {
  const LDContext& ctx = *inst.ctx;
  std::vector<ClosureEntry> closure =
      submagma_closure(ctx, inst.basis, inst.max_leaves, inst.element_cap);
  std::uint64_t count = 0;
  for (const ClosureEntry& entry : closure) {
    ++count;
    if (ctx.equal(entry.value, inst.target)) {
      if (tested) *tested = count;
      return entry.tree;
    }
  }
  if (tested) *tested = count;
  return std::nullopt;
}

bool verify_simldp(const LDPInstance& inst, const SimLDPSolution& sol) {
  const LDContext& ctx = *inst.ctx;
  if (!matches_all(ctx, sol.op_index, inst.pairs, sol.candidate)) return false;
  if (sol.witness) {
    Element v = eval_tree(*sol.witness, inst.domain.basis, ctx);
    if (!ctx.equal(v, sol.candidate)) return false;
  }
  return true;
}

bool verify_modsimldp(const ModLDPInstance& inst, const ModSimLDPSolution& sol) {
  const LDContext& ctx = *inst.ctx;
  if (!matches_all(ctx, sol.op_index, inst.pairs, sol.a)) return false;
  if (!ctx.equal(ctx.apply(sol.op_index, sol.a, sol.a0), inst.p0)) return false;
  if (sol.a0_witness) {
    Element v = eval_tree(*sol.a0_witness, inst.a0_domain.basis, ctx);
    if (!ctx.equal(v, sol.a0)) return false;
  }
  return true;
}

// --- pipelines -------------------------------------------------------------------

std::string pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::A: return "A";
    case Pipeline::B: return "B";
    case Pipeline::C: return "C";
    case Pipeline::D: return "D";
  }
  return "?";
}

namespace {

std::vector<std::pair<Element, Element>> zip_pairs(const std::vector<Element>& base,
                                                   const std::vector<Element>& images) {
  if (base.size() != images.size()) throw std::invalid_argument("transcript size mismatch");
  std::vector<std::pair<Element, Element>> out;
  for (std::size_t i = 0; i < base.size(); ++i) out.emplace_back(base[i], images[i]);
  return out;
}

SharedKey finish_key(const PublicParams& params, Element value) {
  SharedKey key;
  key.value = std::move(value);
  key.canonical = params.canonical_key_text(key.value);
  return key;
}

// Evaluate a tree over pool-side images received in the transcript.
Element eval_witness_on_images(const LDContext& ctx, const TreeWord& witness,
                               const std::vector<Element>& images) {
  std::vector<Element> leaf_values;
  for (std::uint32_t g : witness.leaves()) {
    if (g >= images.size()) throw std::out_of_range("witness leaf out of range");
    leaf_values.push_back(images[g]);
  }
  return eval_tree_with_leaves(witness, leaf_values, ctx);
}

}  // namespace

PipelineResult run_pipeline(Pipeline pipeline, const PublicParams& params,
                            const Transcript& transcript) {
  const LDContext& ctx = params.ctx;
  require_finite(ctx);
  PipelineResult result;

  SubmagmaBasis basis_a{params.basis_a, OpSide::A};
  SubmagmaBasis basis_b{params.basis_b, OpSide::B};
  auto s_pairs = [&] { return zip_pairs(params.basis_a, transcript.msg_b.s_images); };
  auto t_pairs = [&] { return zip_pairs(params.basis_b, transcript.msg_a.t_images); };

  switch (pipeline) {
    case Pipeline::A: {
      // pseudo-key for Bob inside S_B, witness tree, then one application
      LDPInstance inst{&ctx, OpSide::B, s_pairs(), SearchDomain::submagma(basis_b)};
      auto sol = brute_simldp(inst);
      if (!sol) throw std::runtime_error("pipeline A: simultaneous search exhausted");
      result.tested += sol->tested;
      MSPInstance msp{&ctx, basis_b, sol->candidate, 12, 100000};
      std::uint64_t msp_tested = 0;
      auto witness = membership_search(msp, &msp_tested);
      result.tested += msp_tested;
      if (!witness) throw std::runtime_error("pipeline A: membership search exhausted");
      Element reconstructed = eval_witness_on_images(ctx, *witness, transcript.msg_a.t_images);
      Element key = ctx.apply(sol->op_index, reconstructed, transcript.msg_a.p0);
      result.notes = "b'=" + ctx.to_text(sol->candidate) + " op=" + ctx.op(sol->op_index).name +
                     " witness_leaves=" + std::to_string(witness->leaf_count());
      result.key = finish_key(params, std::move(key));
      return result;
    }
    case Pipeline::B: {
      // pseudo-key for Alice with a'0 inside S_A, witness tree for a'0
      ModLDPInstance inst{&ctx, OpSide::A, t_pairs(), transcript.msg_a.p0,
                          SearchDomain::submagma(basis_a)};
      auto sol = brute_modsimldp(inst);
      if (!sol) throw std::runtime_error("pipeline B: modified search exhausted");
      result.tested += sol->tested;
      MSPInstance msp{&ctx, basis_a, sol->a0, 12, 100000};
      std::uint64_t msp_tested = 0;
      auto witness = membership_search(msp, &msp_tested);
      result.tested += msp_tested;
      if (!witness) throw std::runtime_error("pipeline B: membership search exhausted");
      Element b_a0 = eval_witness_on_images(ctx, *witness, transcript.msg_b.s_images);
      Element key = ctx.apply(sol->op_index, sol->a, b_a0);
      result.notes = "a'=" + ctx.to_text(sol->a) + " a'0=" + ctx.to_text(sol->a0) +
                     " op=" + ctx.op(sol->op_index).name;
      result.key = finish_key(params, std::move(key));
      return result;
    }
    case Pipeline::C: {
      // a' anywhere in the carrier, b' inside S_B, no membership search
      LDPInstance alice_inst{&ctx, OpSide::A, t_pairs(), SearchDomain::carrier()};
      auto a_sol = brute_simldp(alice_inst);
      if (!a_sol) throw std::runtime_error("pipeline C: search for a' exhausted");
      result.tested += a_sol->tested;
      LDPInstance bob_inst{&ctx, OpSide::B, s_pairs(), SearchDomain::submagma(basis_b)};
      auto b_sol = brute_simldp(bob_inst);
      if (!b_sol) throw std::runtime_error("pipeline C: search for b' exhausted");
      result.tested += b_sol->tested;
      Element ab = ctx.apply(a_sol->op_index, a_sol->candidate, b_sol->candidate);
      Element key = ctx.apply(b_sol->op_index, ab, transcript.msg_a.p0);
      result.notes = "a'=" + ctx.to_text(a_sol->candidate) + " b'=" + ctx.to_text(b_sol->candidate);
      result.key = finish_key(params, std::move(key));
      return result;
    }
    case Pipeline::D: {
      // b' anywhere in the carrier, (a'0, a') with a'0 inside S_A
      LDPInstance bob_inst{&ctx, OpSide::B, s_pairs(), SearchDomain::carrier()};
      auto b_sol = brute_simldp(bob_inst);
      if (!b_sol) throw std::runtime_error("pipeline D: search for b' exhausted");
      result.tested += b_sol->tested;
      ModLDPInstance alice_inst{&ctx, OpSide::A, t_pairs(), transcript.msg_a.p0,
                                SearchDomain::submagma(basis_a)};
      auto a_sol = brute_modsimldp(alice_inst);
      if (!a_sol) throw std::runtime_error("pipeline D: modified search exhausted");
      result.tested += a_sol->tested;
      Element b_a0 = ctx.apply(b_sol->op_index, b_sol->candidate, a_sol->a0);
      Element key = ctx.apply(a_sol->op_index, a_sol->a, b_a0);
      result.notes = "b'=" + ctx.to_text(b_sol->candidate) + " a'=" + ctx.to_text(a_sol->a) +
                     " a'0=" + ctx.to_text(a_sol->a0);
      result.key = finish_key(params, std::move(key));
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

// --- conjugacy coset -----------------------------------------------------------

std::optional<SCCPSolution> sccp_brute(const SCCPInstance& inst) {
  // first solution in (h-major, c-minor) order, with the conjugates of x
  // indexed once up front
  std::map<Permutation, const Permutation*> first_conjugator;
  for (const Permutation& c : inst.subgroup_k)
    first_conjugator.emplace(c * inst.x * c.inverse(), &c);
  std::uint64_t tested = inst.subgroup_k.size();
  for (const Permutation& h : inst.subgroup_h) {
    ++tested;
    auto it = first_conjugator.find(h * inst.y);
    if (it != first_conjugator.end()) return SCCPSolution{h, *it->second, tested};
  }
  return std::nullopt;
}

SCCPInstance plant_sccp(const PermGroup& group, const SubgroupSpec& h_spec,
                        const SubgroupSpec& k_spec, Rng& rng) {
  SCCPInstance inst{group, h_spec.resolve(group), k_spec.resolve(group), Permutation{},
                    Permutation{}};
  const Permutation& h = inst.subgroup_h[rng.below(inst.subgroup_h.size())];
  const Permutation& c = inst.subgroup_k[rng.below(inst.subgroup_k.size())];
  inst.x = group.elements()[rng.below(group.order())];
  inst.y = h.inverse() * c * inst.x * c.inverse();
  return inst;
}

// --- braid decomposition transform ------------------------------------------------

BraidSCCPInstance decomposition_to_sccp(const BraidWord& s, const BraidWord& s_image,
                                        const ParabolicParams& params) {
  params.validate_relaxed();
  const unsigned p = params.p;
  unsigned strands = std::max({2 * p, s_image.max_index() + 1, s.max_index() + p + 1});
  BraidSCCPInstance inst;
  inst.strands = strands;
  inst.conjugator_strands = strands - p;
  inst.window_beta2 = ParabolicWindow{params.q1, p - params.q1};
  inst.window_beta1 = ParabolicWindow{strands - p + params.q2, p - params.q2};
  inst.x = tau_word(p, strands - p).inverse() * s_image;
  inst.y = (tau_word(p, strands - 2 * p).inverse() * s).shifted(p);
  return inst;
}

PlantedDecomposition plant_decomposition(const ParabolicParams& params, Rng& rng, bool boundary,
                                         std::size_t word_length) {
  params.validate_relaxed();
  const unsigned p = params.p;
  const unsigned top = boundary ? p - 1 : p;  // forced max index of s
  PlantedDecomposition out;

  BraidWord s = random_braid_word(rng, word_length, top);
  // pin the top index so the minimal strand count is exactly max(2p, p+top+1)
  std::vector<int> letters = s.letters();
  letters.push_back(rng.coin() ? static_cast<int>(top) : -static_cast<int>(top));
  out.s = BraidWord(letters);

  unsigned strands = std::max(2 * p, p + top + 1);
  out.b = random_braid_word(rng, word_length, strands - p - 1);
  auto window_word = [&](unsigned lo, unsigned hi, std::size_t len) {
    if (hi < lo) return BraidWord();
    return random_braid_word(rng, len, hi - lo + 1).shifted(lo - 1);
  };
  out.beta1 = window_word(params.q2 + 1, p - 1, 4);
  out.beta2 = window_word(params.q1 + 1, p - 1, 4);

  out.s_image = out.b.inverse().shifted(p) * out.beta1 * tau_word(p, p) * out.beta2 *
                out.s.shifted(p) * out.b;
  return out;
}

TransformCheck verify_decomposition_transform(const PlantedDecomposition& planted,
                                              const ParabolicParams& params) {
  TransformCheck check;
  BraidSCCPInstance inst = decomposition_to_sccp(planted.s, planted.s_image, params);
  check.strands = inst.strands;

  BraidWord h = planted.beta1.shifted(inst.strands - params.p) * planted.beta2;
  BraidWord lhs = planted.b * inst.x * planted.b.inverse();
  BraidWord rhs = h * inst.y;
  check.identity_holds = braid_equal(lhs, rhs);

  // each factor, normalized inside its own parabolic copy, must stay inside
  // the declared index window
  auto factor_ok = [&](const BraidWord& factor, const ParabolicWindow& window) {
    if (window.strands < 2) return factor.empty() || braid_is_trivial(factor);
    BraidWord local(factor);
    std::vector<int> letters;
    for (int l : local.letters()) {
      int idx = std::abs(l) - static_cast<int>(window.shift);
      if (idx < 1 || idx > static_cast<int>(window.strands) - 1) return false;
      letters.push_back(l > 0 ? idx : -idx);
    }
    BraidWord canonical = canonical_braid_word(BraidWord(letters), window.strands);
    for (int l : canonical.letters()) {
      unsigned idx = static_cast<unsigned>(std::abs(l)) + window.shift;
      if (idx < window.lo() || idx > window.hi()) return false;
    }
    return true;
  };
  check.factors_in_windows =
      factor_ok(planted.beta1.shifted(inst.strands - params.p), inst.window_beta1) &&
      factor_ok(planted.beta2, inst.window_beta2);
  return check;
}

}  // namespace ldkep
