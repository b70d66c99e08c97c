#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldkep/ld_context.hpp"
#include "ldkep/perm_group.hpp"
#include "ldkep/protocol.hpp"
#include "ldkep/treeword.hpp"

namespace ldkep {

// Brute-force oracles for the protocol's base problems on finite platforms,
// the four key-recovery pipelines built from them, and the braid-side
// reduction of the single-pair decomposition problem to a conjugacy coset
// instance. All searches are deterministic: fixed enumeration orders,
// first solution wins.

// Where a candidate ranges: the whole (finite) carrier, or the submagma
// closure of a basis, enumerated breadth-first by tree size and deduplicated
// by element value.
struct SearchDomain {
  enum class Kind : std::uint8_t { Carrier, Submagma };
  Kind kind = Kind::Carrier;
  SubmagmaBasis basis;  // Submagma only
  std::size_t max_leaves = 12;
  std::size_t element_cap = 100000;

  static SearchDomain carrier() { return {}; }
  static SearchDomain submagma(SubmagmaBasis b, std::size_t max_leaves = 12,
                               std::size_t element_cap = 100000) {
    return {Kind::Submagma, std::move(b), max_leaves, element_cap};
  }
};

// Simultaneous left-multiplication instance: find a candidate b' (and an
// operation from the pool) with b' *_op s_i = s'_i for every pair.
struct LDPInstance {
  const LDContext* ctx = nullptr;
  OpSide op_pool = OpSide::B;
  std::vector<std::pair<Element, Element>> pairs;
  SearchDomain domain;
};

// Modified instance: additionally recover a'0 with a' *_op a'0 = p0.
struct ModLDPInstance {
  const LDContext* ctx = nullptr;
  OpSide op_pool = OpSide::A;
  std::vector<std::pair<Element, Element>> pairs;
  Element p0;
  SearchDomain a0_domain;
};

// Submagma membership: express the target as a tree-word over the basis.
struct MSPInstance {
  const LDContext* ctx = nullptr;
  SubmagmaBasis basis;
  Element target;
  std::size_t max_leaves = 12;
  std::size_t element_cap = 100000;
};

struct SimLDPSolution {
  Element candidate;
  std::size_t op_index = 0;
  std::optional<TreeWord> witness;  // when the domain was a submagma
  std::uint64_t tested = 0;
};

struct ModSimLDPSolution {
  Element a;
  std::size_t op_index = 0;
  Element a0;
  std::optional<TreeWord> a0_witness;
  std::uint64_t tested = 0;
};

// Empty optional = search space exhausted within the bounds.
std::optional<SimLDPSolution> brute_simldp(const LDPInstance& inst);
std::optional<ModSimLDPSolution> brute_modsimldp(const ModLDPInstance& inst);
std::optional<TreeWord> membership_search(const MSPInstance& inst, std::uint64_t* tested = nullptr);

bool verify_simldp(const LDPInstance& inst, const SimLDPSolution& sol);
bool verify_modsimldp(const ModLDPInstance& inst, const ModSimLDPSolution& sol);

// Submagma closure by increasing leaf count with element-level deduplication.
struct ClosureEntry {
  Element value;
  TreeWord tree;
};
std::vector<ClosureEntry> submagma_closure(const LDContext& ctx, const SubmagmaBasis& basis,
                                           std::size_t max_leaves, std::size_t element_cap);

// --- key-recovery pipelines ----------------------------------------------------

enum class Pipeline : std::uint8_t { A, B, C, D };

// A: pseudo-key for Bob restricted to S_B, then a membership witness.
// B: pseudo-key for Alice with a'0 restricted to S_A, then a witness.
// C: two simultaneous-LD oracles, no membership search.
// D: plain simultaneous oracle for Bob plus the modified oracle for Alice.
struct PipelineResult {
  SharedKey key;
  std::uint64_t tested = 0;
  std::string notes;
};
PipelineResult run_pipeline(Pipeline pipeline, const PublicParams& params,
                            const Transcript& transcript);

std::string pipeline_name(Pipeline p);

// --- conjugacy coset problem ----------------------------------------------------

// Find h in H, c in K with c x c^-1 = h y; first solution in (h-major,
// c-minor) order. Empty optional = the conjugacy class of x misses H y.
struct SCCPInstance {
  PermGroup group;
  std::vector<Permutation> subgroup_h, subgroup_k;
  Permutation x, y;
};

struct SCCPSolution {
  Permutation h, c;
  std::uint64_t tested = 0;
};

std::optional<SCCPSolution> sccp_brute(const SCCPInstance& inst);

// Instance with a planted solution, sampled like the honest protocol would.
SCCPInstance plant_sccp(const PermGroup& group, const SubgroupSpec& h_spec,
                        const SubgroupSpec& k_spec, Rng& rng);

// --- braid decomposition -> conjugacy coset --------------------------------------

// shift^amount(B_strands): letter indices amount+1 .. amount+strands-1.
struct ParabolicWindow {
  unsigned shift = 0;
  unsigned strands = 1;
  unsigned lo() const { return shift + 1; }
  unsigned hi() const { return shift + strands - 1; }  // empty window if strands == 1
};

// Conjugacy coset instance over B_N: find c in B_{conjugator_strands} and
// h = h1 h2 with h1, h2 in the two parabolic windows, c x c^-1 = h y.
struct BraidSCCPInstance {
  unsigned strands = 0;
  unsigned conjugator_strands = 0;
  ParabolicWindow window_beta2, window_beta1;  // shift^{q1}(B_{p-q1}), shift^{N-p+q2}(B_{p-q2})
  BraidWord x, y;
};

// Transform the single-pair decomposition instance (s, s') into the coset
// instance, with N the minimal strand count >= 2p covering s' and shift^p(s).
BraidSCCPInstance decomposition_to_sccp(const BraidWord& s, const BraidWord& s_image,
                                        const ParabolicParams& params);

// Honest sample of a decomposition instance: secret conjugator b, window
// elements beta1, beta2, public pair (s, s'). `boundary` pins N = 2p.
struct PlantedDecomposition {
  BraidWord s, s_image;
  BraidWord b, beta1, beta2;
};
PlantedDecomposition plant_decomposition(const ParabolicParams& params, Rng& rng,
                                         bool boundary = false, std::size_t word_length = 8);

struct TransformCheck {
  bool identity_holds = false;
  bool factors_in_windows = false;
  unsigned strands = 0;
};
TransformCheck verify_decomposition_transform(const PlantedDecomposition& planted,
                                              const ParabolicParams& params);

}  // namespace ldkep
