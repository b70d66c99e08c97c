#include "ldkep/laver.hpp"

#include <stdexcept>

namespace ldkep {

// Fill order: row 2^n is the identity row; then rows k = 2^n - 1 down to 1,
// columns left to right, using
//     k * 1       = k + 1
//     k * (l + 1) = (k * l) * (k + 1).
// Well-founded because k * l > k always, so the right-hand side only reads
// rows that are already complete.
LaverTable::LaverTable(unsigned level) : level_(level) {
  if (level < 1 || level > 5) throw std::invalid_argument("Laver level must be in 1..5");
  size_ = 1u << level;
  entries_.assign(static_cast<std::size_t>(size_) * size_, 0);
  auto at = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t& {
    return entries_[static_cast<std::size_t>(x - 1) * size_ + (y - 1)];
  };
  for (std::uint32_t l = 1; l <= size_; ++l) at(size_, l) = l;
  for (std::uint32_t k = size_ - 1; k >= 1; --k) {
    at(k, 1) = k + 1;
    for (std::uint32_t l = 1; l < size_; ++l) at(k, l + 1) = at(at(k, l), k + 1);
  }
}

std::uint32_t LaverTable::apply(std::uint32_t x, std::uint32_t y) const {
  if (x < 1 || x > size_ || y < 1 || y > size_) throw std::out_of_range("Laver argument out of range");
  return entries_[static_cast<std::size_t>(x - 1) * size_ + (y - 1)];
}

bool LaverTable::check_left_distributive_exhaustive(std::uint32_t* bad_x, std::uint32_t* bad_y,
                                                    std::uint32_t* bad_z) const {
  for (std::uint32_t x = 1; x <= size_; ++x)
    for (std::uint32_t y = 1; y <= size_; ++y)
      for (std::uint32_t z = 1; z <= size_; ++z)
        if (apply(x, apply(y, z)) != apply(apply(x, y), apply(x, z))) {
          if (bad_x) *bad_x = x;
          if (bad_y) *bad_y = y;
          if (bad_z) *bad_z = z;
          return false;
        }
  return true;
}

std::string LaverTable::to_text() const {
  std::string out;
  for (std::uint32_t x = 1; x <= size_; ++x) {
    for (std::uint32_t y = 1; y <= size_; ++y) {
      if (y > 1) out += ' ';
      out += std::to_string(apply(x, y));
    }
    out += '\n';
  }
  return out;
}

}  // namespace ldkep
