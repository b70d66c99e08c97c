#include "ldkep/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace ldkep {

BraidWord::BraidWord(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int l : letters_)
    if (l == 0) throw std::invalid_argument("braid letter must be nonzero");
}

BraidWord BraidWord::generator(int letter) {
  if (letter == 0) throw std::invalid_argument("braid letter must be nonzero");
  return BraidWord(std::vector<int>{letter});
}

unsigned BraidWord::max_index() const {
  int m = 0;
  for (int l : letters_) m = std::max(m, std::abs(l));
  return static_cast<unsigned>(m);
}

int BraidWord::exponent_sum() const {
  int s = 0;
  for (int l : letters_) s += (l > 0) ? 1 : -1;
  return s;
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  BraidWord out;
  out.letters_.reserve(letters_.size() + rhs.letters_.size());
  out.letters_ = letters_;
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return out;
}

BraidWord BraidWord::inverse() const {
  BraidWord out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
  return out;
}

BraidWord BraidWord::shifted(unsigned p) const {
  BraidWord out;
  out.letters_.reserve(letters_.size());
  int d = static_cast<int>(p);
  for (int l : letters_) out.letters_.push_back(l > 0 ? l + d : l - d);
  return out;
}

std::string BraidWord::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(letters_[i]);
  }
  return out;
}

namespace {

// Canonical signed decimal: optional '-', no leading zeros, no '+'.
bool parse_strict_letter(const std::string& tok, int& out) {
  if (tok.empty()) return false;
  std::size_t i = 0;
  bool neg = tok[0] == '-';
  if (neg) i = 1;
  if (i >= tok.size()) return false;
  if (tok[i] == '0') return false;  // zero itself and leading zeros rejected
  long v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    v = v * 10 + (tok[i] - '0');
    if (v > 1'000'000) return false;
  }
  out = static_cast<int>(neg ? -v : v);
  return true;
}

}  // namespace

BraidWord BraidWord::from_text(const std::string& text, bool strict) {
  std::vector<int> letters;
  if (strict) {
    if (text.empty()) return BraidWord();
    std::size_t start = 0;
    while (true) {
      std::size_t sp = text.find(' ', start);
      std::string tok = text.substr(start, sp == std::string::npos ? sp : sp - start);
      int letter;
      if (!parse_strict_letter(tok, letter))
        throw std::invalid_argument("malformed braid letter: '" + tok + "'");
      letters.push_back(letter);
      if (sp == std::string::npos) break;
      start = sp + 1;
    }
    return BraidWord(std::move(letters));
  }
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') { ++i; continue; }
    std::size_t end = i;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    std::string tok = text.substr(i, end - i);
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
      letters.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed braid letter: '" + tok + "'");
    }
    i = end;
  }
  return BraidWord(std::move(letters));
}

BraidWord delta_word(unsigned n) {
  if (n < 2) throw std::invalid_argument("delta_n requires n >= 2");
  std::vector<int> letters;
  letters.reserve(n - 1);
  for (unsigned i = n - 1; i >= 1; --i) letters.push_back(static_cast<int>(i));
  return BraidWord(std::move(letters));
}

BraidWord tau_word(unsigned p, unsigned q) {
  if (p < 1) throw std::invalid_argument("tau_{p,q} requires p >= 1");
  BraidWord out;
  BraidWord block = delta_word(p + 1);
  for (unsigned k = 0; k < q; ++k) out = out * block.shifted(k);
  return out;
}

BraidWord pure_generator(unsigned i, unsigned j) {
  if (i < 1 || i >= j) throw std::invalid_argument("pure generator requires 1 <= i < j");
  std::vector<int> prefix;
  for (unsigned k = j - 1; k > i; --k) prefix.push_back(static_cast<int>(k));
  BraidWord conj{std::vector<int>(prefix)};
  BraidWord core{std::vector<int>{static_cast<int>(i), static_cast<int>(i)}};
  return conj * core * conj.inverse();
}

BraidWord random_braid_word(Rng& rng, std::size_t length, unsigned max_index) {
  if (max_index < 1) throw std::invalid_argument("max_index must be >= 1");
  std::vector<int> letters;
  letters.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    std::uint64_t r = rng.below(2ull * max_index);
    letters.push_back(r < max_index ? static_cast<int>(r) + 1
                                    : -(static_cast<int>(r - max_index) + 1));
  }
  return BraidWord(std::move(letters));
}

BraidWord random_braid_word(std::uint64_t seed, std::size_t length, unsigned max_index) {
  Rng rng(seed);
  return random_braid_word(rng, length, max_index);
}

BraidWord random_pure_braid(Rng& rng, std::size_t length, unsigned strands) {
  if (strands < 2) throw std::invalid_argument("pure braids need >= 2 strands");
  BraidWord out;
  for (std::size_t k = 0; k < length; ++k) {
    unsigned i = static_cast<unsigned>(rng.in_range(1, strands - 1));
    unsigned j = static_cast<unsigned>(rng.in_range(i + 1, strands));
    BraidWord gen = pure_generator(i, j);
    out = out * (rng.coin() ? gen : gen.inverse());
  }
  return out;
}

Permutation strand_permutation(const BraidWord& word, unsigned strands) {
  if (word.max_index() + 1 > strands) throw std::out_of_range("letter index out of range");
  std::vector<std::uint8_t> pos(strands);
  std::iota(pos.begin(), pos.end(), std::uint8_t{1});
  for (int l : word.letters()) {
    unsigned i = static_cast<unsigned>(std::abs(l));
    std::swap(pos[i - 1], pos[i]);
  }
  return Permutation(std::move(pos));
}

BraidWord erase_last_strands(const BraidWord& word, unsigned strands, unsigned count) {
  if (count < 1 || count >= strands) throw std::invalid_argument("bad strand count");
  unsigned kept = strands - count;
  Permutation image = strand_permutation(word, strands);
  for (unsigned k = kept + 1; k <= strands; ++k)
    if (image(k) <= kept)
      throw std::invalid_argument("erased strands are not setwise stabilized");

  std::vector<std::uint8_t> pos(strands);
  std::iota(pos.begin(), pos.end(), std::uint8_t{1});
  std::vector<int> out;
  for (int l : word.letters()) {
    unsigned i = static_cast<unsigned>(std::abs(l));
    if (pos[i - 1] <= kept && pos[i] <= kept) {
      unsigned idx = 0;
      for (unsigned k = 0; k < i; ++k)
        if (pos[k] <= kept) ++idx;
      out.push_back(l > 0 ? static_cast<int>(idx) : -static_cast<int>(idx));
    }
    std::swap(pos[i - 1], pos[i]);
  }
  return BraidWord(std::move(out));
}

}  // namespace ldkep
