#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ldkep {

// Permutation of {1..n}, stored as the image sequence. Products compose like
// functions: (p * q)(i) = p(q(i)), i.e. q acts first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(unsigned degree);                 // identity
  explicit Permutation(std::vector<std::uint8_t> images);  // validated

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  unsigned operator()(unsigned i) const { return images_[i - 1]; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  bool commutes_with(const Permutation& other) const;

  static Permutation transposition(unsigned degree, unsigned i, unsigned j);

  const std::vector<std::uint8_t>& images() const { return images_; }

  // Space-separated image list, e.g. "2 1 3".
  std::string to_text() const;
  static Permutation from_text(const std::string& text);

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> images_;
};

}  // namespace ldkep
