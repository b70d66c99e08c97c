#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ldkep/braid.hpp"
#include "ldkep/garside.hpp"
#include "ldkep/laver.hpp"
#include "ldkep/perm_group.hpp"
#include "ldkep/rng.hpp"

namespace ldkep {

// Carrier element: Laver table value, group element, or braid element in
// normal form.
using Element = std::variant<std::uint32_t, Permutation, BraidValue>;

std::string element_to_text(const Element& e);

enum class CarrierKind : std::uint8_t { Laver, Group, Braid };

// Which operation pool an operation belongs to. `Both` marks operations that
// distribute over everything, as in a genuine (multi-)LD-system; pools A and
// B only guarantee the two cross laws.
enum class OpSide : std::uint8_t { A, B, Both };

// Closed endomorphism descriptor; kept as data rather than a callable so that
// reports and config files can name it.
struct Endo {
  enum class Kind : std::uint8_t {
    Identity,
    Trivial,       // everything to the neutral element
    Shift,         // braid generator shift by `amount`
    PullOutShift,  // erase last `amount` strands of B_`strands`, then shift back up
    Table,         // finite carrier: image per group element index
    ConjByFixed,   // x -> g^-1 x g
  };
  Kind kind = Kind::Identity;
  unsigned amount = 0;
  unsigned strands = 0;
  std::vector<std::uint32_t> table;
  std::optional<Permutation> conj;

  std::string name() const;

  static Endo identity() { return {}; }
  static Endo trivial() { return {Kind::Trivial, 0, 0, {}, std::nullopt}; }
  static Endo shift(unsigned d) { return {Kind::Shift, d, 0, {}, std::nullopt}; }
  static Endo pull_out_shift(unsigned d, unsigned strands) {
    return {Kind::PullOutShift, d, strands, {}, std::nullopt};
  }
  static Endo conj_by(Permutation g) { return {Kind::ConjByFixed, 0, 0, {}, std::move(g)}; }
  // Retraction of a symmetric group onto <(1 2)> along the sign map; a
  // projector, handy for the f-symmetric operation.
  static Endo sign_projector(const PermGroup& group);
  static Endo table_map(const PermGroup& group, const std::vector<std::uint32_t>& images);
};

// Group operation shapes. All act on a fixed finite group.
struct GroupOpSpec {
  enum class Form : std::uint8_t {
    FGH,          // f(x^-1) g(y) h(x); plain conjugacy is f=g=h=id
    CentralTwist, // x^-1 a y x (LD when a is central)
    Sym,          // f(x y^-1) x (LD when f is a projector; f=id is x y^-1 x)
    SymRev,       // x f(y^-1 x)
    TwistedConj,  // f(x^-1) y x; satisfies the twisted "near" LD law only
  };
  Form form = Form::FGH;
  Endo f, g, h;
  std::optional<Permutation> a;
};

// Braid operation x * y = shift^p(x^-1) . twist . shift^p(y) . x.
struct BraidOpSpec {
  unsigned shift_amount = 1;
  BraidWord twist_word;
  BraidValue twist;

  BraidOpSpec() = default;
  BraidOpSpec(unsigned shift, BraidWord word)
      : shift_amount(shift), twist_word(std::move(word)),
        twist(BraidValue::from_word(twist_word)) {}
};

// Braid f-conjugacy x * y = f(x^-1) f(y) x for an endomorphism of the carrier.
struct BraidFConjSpec {
  Endo f;
};

struct LDOp {
  std::string name;
  OpSide side = OpSide::Both;
  std::variant<std::monostate, GroupOpSpec, BraidOpSpec, BraidFConjSpec> spec;
};

// Sampling policy for braid carriers.
struct BraidSampler {
  enum class Mode : std::uint8_t { Free, Pure };
  Mode mode = Mode::Free;
  unsigned max_index = 2;
  unsigned strands = 3;  // Pure mode ambient group
  std::size_t length = 8;
};

// A carrier together with an indexed family of binary operations carrying
// side labels, the carrier's equality, and a seeded sampler. Immutable after
// construction.
class LDContext {
 public:
  CarrierKind carrier() const { return carrier_; }
  const std::vector<LDOp>& ops() const { return ops_; }
  std::size_t op_count() const { return ops_.size(); }
  const LDOp& op(std::size_t i) const { return ops_.at(i); }

  Element apply(std::size_t op_index, const Element& x, const Element& y) const;
  bool equal(const Element& x, const Element& y) const;
  Element sample(Rng& rng) const;
  std::optional<std::size_t> carrier_size() const;  // nullopt for braids
  Element carrier_element(std::size_t index) const;  // finite carriers only

  std::string to_text(const Element& e) const;
  Element element_from_text(const std::string& text) const;

  // Operation indices on a side (side `Both` shows up in both lists).
  std::vector<std::size_t> side_ops(OpSide side) const;
  // (i, j) pairs such that op_i must distribute over op_j.
  std::vector<std::pair<std::size_t, std::size_t>> declared_law_pairs() const;

  const std::string& descriptor() const { return descriptor_; }

  const LaverTable& laver() const;
  const PermGroup& group() const;
  const BraidSampler& braid_sampler() const { return sampler_; }

  Element apply_endo(const Endo& f, const Element& x) const;
  Element neutral() const;  // group identity / empty braid (not for Laver)
  Element group_mul(const Element& x, const Element& y) const;
  Element group_inv(const Element& x) const;

  // --- construction -------------------------------------------------------
  static LDContext laver_context(unsigned level);
  static LDContext group_conjugacy(PermGroup group);
  // x *_i y = x^-1 a_i y x; every a_i must be central.
  static LDContext central_twist(PermGroup group, std::vector<Permutation> twists,
                                 std::vector<std::string> twist_names);
  // x * y = f(x^-1) g(y) h(x) on a group, unvalidated (law checks decide).
  static LDContext group_fgh(PermGroup group, Endo f, Endo g, Endo h);
  // x o y = f(x y^-1) x; requires f to be a projector (sampled), else throws.
  static LDContext group_symmetric(PermGroup group, Endo f, bool reversed = false,
                                   unsigned check_trials = 64, std::uint64_t check_seed = 1);
  // x * y = f(x^-1) y x, the twisted conjugacy operation (near-LD only).
  static LDContext group_twisted(PermGroup group, Endo f);

  // Dehornoy's shifted conjugacy pair on braids (bi-LD).
  static LDContext shifted_conjugacy();
  // x * y = shift^p(x^-1) a' tau_{p,p}^{sign} a'' shift^p(y) x, a', a'' in B_p.
  // enforce=true rejects non-commuting (a', a''); enforce=false builds the
  // operation anyway so law checkers can exhibit the failure.
  static LDContext generalized_shifted_conjugacy(unsigned p, const BraidWord& a_left,
                                                 const BraidWord& a_right, int sign,
                                                 bool enforce = true);
  // Split twist: p = p1 + p2,
  // a = a1' ∂^{p1}(a2') ∂^{p1}(tau_{p2,p}) tau_{p,p1}^{-1} a1'' ∂^{p1}(a2'').
  static LDContext split_shifted_conjugacy(unsigned p1, unsigned p2, const BraidWord& a1p,
                                           const BraidWord& a1pp, const BraidWord& a2p,
                                           const BraidWord& a2pp, bool enforce = true);
  // Braid f-conjugacy x * y = f(x^-1) f(y) x; Pure sampler when f needs it.
  static LDContext braid_f_conjugacy(Endo f, BraidSampler sampler);

  // Parabolic two-pool family: A-ops use alpha = a1 tau_{p,p} a2 with
  // a1 in B_{q1}, a2 in B_{q2}; B-ops use beta = b1 tau_{p,p} b2 with
  // b1 in shift^{q2}(B_{p-q2}), b2 in shift^{q1}(B_{p-q1}). Cross laws hold by
  // construction; same-side labels are upgraded when the extra commutation
  // conditions hold syntactically.
  static LDContext parabolic_partial_multi_ld(
      unsigned p, unsigned q1, unsigned q2,
      const std::vector<std::pair<BraidWord, BraidWord>>& alphas,
      const std::vector<std::pair<BraidWord, BraidWord>>& betas);

  // descriptor text <-> context
  static LDContext from_descriptor(const std::string& descriptor);

  void set_sampler(BraidSampler sampler) { sampler_ = sampler; }

  struct BraidParams {
    unsigned p = 0, q1 = 0, q2 = 0;
  };
  const BraidParams& braid_params() const { return braid_params_; }

 private:
  CarrierKind carrier_ = CarrierKind::Laver;
  std::vector<LDOp> ops_;
  std::shared_ptr<const LaverTable> laver_;
  std::shared_ptr<const PermGroup> group_;
  BraidSampler sampler_;
  BraidParams braid_params_;
  std::string descriptor_;
};

// Protocol parameter set for the parabolic braid platform.
struct ParabolicParams {
  unsigned p = 7, q1 = 3, q2 = 4;
  unsigned strands = 0;  // ambient N where needed; 0 = derive

  // strict: 1 < q1 < q2 < p, q1 >= 3, p - q2 >= 3 (platform hygiene).
  void validate_strict() const;
  // relaxed: 1 < q1 < q2 < p (enough for the decomposition transform).
  void validate_relaxed() const;
};

// --- law checking -----------------------------------------------------------

struct LawReport {
  bool pass = true;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::size_t op_i = 0, op_j = 0;
  std::optional<std::array<Element, 3>> counterexample;
  std::string law;  // human-readable description
};

// x *_i (y *_j z) == (x *_i y) *_j (x *_i z). Exhaustive when the carrier is
// finite with at most `exhaustive_limit` elements, else `trials` seeded
// samples.
LawReport check_left_distributive(const LDContext& ctx, std::size_t op_i, std::size_t op_j,
                                  unsigned trials, std::uint64_t seed,
                                  std::size_t exhaustive_limit = 1024);

// All declared law pairs of the context; stops at the first failure.
LawReport check_declared_laws(const LDContext& ctx, unsigned trials, std::uint64_t seed,
                              std::size_t exhaustive_limit = 1024);

// Pointwise conditions under which x*y = f(x^-1) g(y) h(x) is LD:
// fh = f, gh = hg = hf, fg = gf = f^2, h^2 = h; checked on samples, side by
// side with the law itself.
struct ConditionReport {
  bool conditions_pass = true;
  bool law_pass = true;
  std::vector<std::string> failed_conditions;
  std::uint64_t checked = 0;
};
ConditionReport check_fgh_conditions(const LDContext& ctx, const Endo& f, const Endo& g,
                                     const Endo& h, unsigned trials, std::uint64_t seed);

// Conditions for the one-endomorphism twist family x *_i y = f(x^-1) a_i f(y) x:
// a_i f(a_i) a_j = f(a_j) a_i f(a_i) for all i, j, and [a_i, f^2(x)] = 1.
// Works on both group and braid carriers.
ConditionReport check_endo_twist_conditions(const LDContext& ctx, const Endo& f,
                                            const std::vector<Element>& twists,
                                            unsigned trials, std::uint64_t seed);

// Twisted conjugacy "near" LD law a*(b*c) == (a*b)*(f(a)*c) for op x*y=f(x^-1)yx.
LawReport check_twisted_near_ld(const LDContext& ctx, std::size_t op_index, const Endo& f,
                                unsigned trials, std::uint64_t seed);

// Distributivity of conjugacy over the symmetric operation x y^-1 x in a group:
// x*(y o z) == (x*y) o (x*z).
LawReport check_conjugacy_over_symmetric(const PermGroup& group, unsigned trials,
                                         std::uint64_t seed);

bool endo_is_projector(const LDContext& ctx, const Endo& f, unsigned trials, std::uint64_t seed,
                       Element* witness = nullptr);

}  // namespace ldkep
