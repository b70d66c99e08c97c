#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldkep/braid.hpp"

namespace ldkep {

// Left-greedy Garside normal form in B_N: a power of the half twist Delta_N
// followed by a left-weighted sequence of permutation-braid factors, none of
// them trivial or equal to Delta_N. Two words represent the same braid in B_N
// exactly when their normal forms are identical records, which makes this the
// equality decision and the canonical serialization for everything downstream.
//
// Factors are stored as permutations in the start-to-end convention: entry k
// is the final position of the strand entering at position k.
struct GarsideNormalForm {
  unsigned strands = 1;
  long long delta_power = 0;
  std::vector<Permutation> factors;

  bool is_identity() const { return delta_power == 0 && factors.empty(); }
  std::size_t canonical_length() const { return factors.size(); }

  // Spell the normal form back out as a braid word (Delta word repeated, then
  // one fixed reduced word per factor). Deterministic, so it doubles as the
  // canonical word of the braid at this strand count.
  BraidWord to_word() const;
  std::string to_text() const;

  friend bool operator==(const GarsideNormalForm&, const GarsideNormalForm&) = default;
};

// Compute the normal form of `word` in B_strands. Every letter index must be
// < strands; otherwise std::out_of_range.
GarsideNormalForm normal_form(const BraidWord& word, unsigned strands);

// Equality in the smallest common ambient group (inclusion-stable, so the
// answer is independent of the embedding).
bool braid_equal(const BraidWord& x, const BraidWord& y);

// Canonical word of x viewed in B_strands: to_word() of its normal form.
BraidWord canonical_braid_word(const BraidWord& x, unsigned strands);

bool braid_is_trivial(const BraidWord& x);

// Braid element kept in normal form, with group operations performed at
// factor granularity. Canonical words blow up quadratically with the strand
// count (every half-twist spells N(N-1)/2 letters), so iterated products are
// computed here rather than by re-normalizing ever longer words.
class BraidValue {
 public:
  BraidValue() : nf_{1, 0, {}} {}

  static BraidValue from_word(const BraidWord& word);  // minimal ambient group
  static BraidValue from_word(const BraidWord& word, unsigned strands);
  static BraidValue from_nf(GarsideNormalForm nf);

  const GarsideNormalForm& nf() const { return nf_; }
  unsigned strands() const { return nf_.strands; }
  bool is_identity() const { return nf_.is_identity(); }
  BraidWord word() const { return nf_.to_word(); }  // canonical at strands()

  BraidValue operator*(const BraidValue& rhs) const;
  BraidValue inverse() const;
  BraidValue shifted(unsigned p) const;            // ambient grows by p
  BraidValue at_strands(unsigned strands) const;   // embed, strands >= current
  bool equals(const BraidValue& rhs) const;

  friend bool operator==(const BraidValue& a, const BraidValue& b) { return a.equals(b); }

 private:
  GarsideNormalForm nf_;
};

}  // namespace ldkep
