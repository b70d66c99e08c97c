#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldkep/permutation.hpp"
#include "ldkep/rng.hpp"

namespace ldkep {

// Braid word over the Artin generators: letter +i is sigma_i, letter -i is
// sigma_i^{-1}, indices >= 1. Words are free: nothing is ever reduced or
// rewritten implicitly. The smallest ambient group is B_N with
// N = max_index() + 1.
class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(std::vector<int> letters);

  static BraidWord generator(int letter);  // single-letter word, letter != 0

  const std::vector<int>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  unsigned max_index() const;  // 0 for the empty word
  int exponent_sum() const;

  BraidWord operator*(const BraidWord& rhs) const;  // concatenation
  BraidWord inverse() const;                        // reversed, signs flipped
  BraidWord shifted(unsigned p) const;              // sigma_i -> sigma_{i+p}

  // Space-separated signed decimal letters; empty string is the identity.
  std::string to_text() const;
  // strict = single spaces, canonical decimals, no stray bytes (wire format).
  static BraidWord from_text(const std::string& text, bool strict = false);

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::vector<int> letters_;
};

// delta_n = sigma_{n-1} ... sigma_2 sigma_1 (n >= 2).
BraidWord delta_word(unsigned n);

// tau_{p,q} = delta_{p+1} . shift(delta_{p+1}) ... shift^{q-1}(delta_{p+1}),
// an element of B_{p+q}; q == 0 gives the empty word.
BraidWord tau_word(unsigned p, unsigned q);

// Standard pure-braid generator A_{i,j} (1 <= i < j):
// (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1} ... sigma_{j-1})^{-1}.
BraidWord pure_generator(unsigned i, unsigned j);

// Deterministic word with letters i.i.d. uniform over {+-1, ..., +-max_index}.
BraidWord random_braid_word(Rng& rng, std::size_t length, unsigned max_index);
BraidWord random_braid_word(std::uint64_t seed, std::size_t length, unsigned max_index);

// Deterministic product of `length` pure-braid generators A_{i,j}^{+-1} of
// B_strands; lands in the pure braid group.
BraidWord random_pure_braid(Rng& rng, std::size_t length, unsigned strands);

// Image under the epimorphism onto S_N (sigma_i -> (i,i+1), signs ignored).
// Convention: images[k] is the strand that ends at position k, so the word
// delta_n maps 1 to n.
Permutation strand_permutation(const BraidWord& word, unsigned strands);

// Remove the last `count` strands of a braid in B_strands whose permutation
// stabilizes {strands-count+1 .. strands} setwise; result lives in
// B_{strands-count}. Restricted to the pure braid group this is the standard
// strand-forgetting homomorphism. Throws std::invalid_argument if the erased
// set is not stabilized.
BraidWord erase_last_strands(const BraidWord& word, unsigned strands, unsigned count);

}  // namespace ldkep
