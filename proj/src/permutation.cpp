#include "ldkep/permutation.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ldkep {

Permutation::Permutation(unsigned degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), std::uint8_t{1});
}

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint8_t v : images_) {
    if (v < 1 || v > images_.size() || seen[v - 1])
      throw std::invalid_argument("not a permutation of 1..n");
    seen[v - 1] = true;
  }
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("degree mismatch");
  Permutation out;
  out.images_.resize(images_.size());
  for (unsigned i = 1; i <= degree(); ++i) out.images_[i - 1] = images_[rhs(i) - 1];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (unsigned i = 1; i <= degree(); ++i) out.images_[images_[i - 1] - 1] = static_cast<std::uint8_t>(i);
  return out;
}

bool Permutation::is_identity() const {
  for (unsigned i = 1; i <= degree(); ++i)
    if (images_[i - 1] != i) return false;
  return true;
}

bool Permutation::commutes_with(const Permutation& other) const {
  return *this * other == other * *this;
}

Permutation Permutation::transposition(unsigned degree, unsigned i, unsigned j) {
  if (i < 1 || j < 1 || i > degree || j > degree || i == j)
    throw std::invalid_argument("bad transposition");
  Permutation out(degree);
  std::swap(out.images_[i - 1], out.images_[j - 1]);
  return out;
}

std::string Permutation::to_text() const {
  std::string out;
  for (unsigned i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<int>(images_[i]));
  }
  return out;
}

Permutation Permutation::from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint8_t> images;
  long v;
  while (in >> v) {
    if (v < 1 || v > 255) throw std::invalid_argument("image out of range");
    images.push_back(static_cast<std::uint8_t>(v));
  }
  return Permutation(std::move(images));
}

}  // namespace ldkep
