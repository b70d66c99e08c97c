#include "ldkep/garside.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

// Classical left-greedy normal form computation:
//
//   1. Rewrite the input as Delta^d . A_1 ... A_k with every A_i a
//      permutation braid. A positive letter contributes sigma_i itself, a
//      negative letter sigma_i^{-1} contributes Delta^{-1} . (Delta
//      sigma_i^{-1}), and each Delta power is carried to the front with the
//      flip automorphism tau(A) = Delta^{-1} A Delta.
//   2. Slide crossings left between adjacent factors until every pair (A, B)
//      is left-weighted: starting set S(B) contained in finishing set F(A).
//      Each slide moves one crossing one factor to the left, so the passes
//      terminate.
//   3. Absorb leading Delta factors into the power, drop trivial factors.
//
// Group operations on normal forms (product, inverse, shift, re-embedding)
// reuse the same pipeline: they emit a short sequence of Delta powers and
// permutation-braid factors and hand it to the normalizer. Factors are
// permutations in the start-to-end convention; there
//   S(A) = { i : A(i) > A(i+1) },  F(A) = { i : A^{-1}(i) > A^{-1}(i+1) }.

namespace ldkep {

namespace {

using Images = std::vector<std::uint8_t>;

Images identity_images(unsigned n) {
  Images v(n);
  std::iota(v.begin(), v.end(), std::uint8_t{1});
  return v;
}

Images delta_images(unsigned n) {
  Images v(n);
  for (unsigned k = 0; k < n; ++k) v[k] = static_cast<std::uint8_t>(n - k);
  return v;
}

Images invert_images(const Images& p) {
  Images inv(p.size());
  for (unsigned k = 0; k < p.size(); ++k) inv[p[k] - 1] = static_cast<std::uint8_t>(k + 1);
  return inv;
}

bool is_identity_images(const Images& p) {
  for (unsigned k = 0; k < p.size(); ++k)
    if (p[k] != k + 1) return false;
  return true;
}

// Flip conjugation tau(A) = Delta^{-1} A Delta: g(k) = w(A(w(k))) with
// w(k) = n+1-k. Involution on permutation braids.
Images flip_images(const Images& p) {
  unsigned n = static_cast<unsigned>(p.size());
  Images g(n);
  for (unsigned k = 1; k <= n; ++k) g[k - 1] = static_cast<std::uint8_t>(n + 1 - p[n - k]);
  return g;
}

// One factor plus its cached inverse, kept in sync by the slide loop.
struct Factor {
  Images perm;
  Images inv;
  explicit Factor(Images p) : perm(std::move(p)), inv(invert_images(perm)) {}
};

// Left-weight the adjacent pair (a, b) in place. Returns true if anything
// moved. Each step picks the smallest i in S(b) \ F(a), appends sigma_i to a
// (allowed because i is not in F(a)) and strips it from the front of b. A
// swap at i only disturbs candidates at i-1, i, i+1, so the scan resumes just
// left of the last hit instead of from the start.
bool slide_pair(Factor& a, Factor& b) {
  const unsigned n = static_cast<unsigned>(a.perm.size());
  bool moved = false;
  unsigned i = 1;
  while (i < n) {
    if (b.perm[i - 1] > b.perm[i] && a.inv[i - 1] < a.inv[i]) {
      moved = true;
      // a <- a . sigma_i : swap the values i, i+1 inside a.
      unsigned pa = a.inv[i - 1], pb = a.inv[i];
      std::swap(a.perm[pa - 1], a.perm[pb - 1]);
      std::swap(a.inv[i - 1], a.inv[i]);
      // b <- sigma_i^{-1} . b : swap the entries at positions i, i+1.
      std::uint8_t va = b.perm[i - 1], vb = b.perm[i];
      std::swap(b.perm[i - 1], b.perm[i]);
      std::swap(b.inv[va - 1], b.inv[vb - 1]);
      i = i > 1 ? i - 1 : 1;
    } else {
      ++i;
    }
  }
  return moved;
}

// Reduced word of a permutation braid: repeatedly emit the smallest i with
// p(i) > p(i+1) and cancel it off the front. Deterministic, length equals the
// inversion count.
void append_factor_word(const Images& images, std::vector<int>& out) {
  Images p = images;
  const unsigned n = static_cast<unsigned>(p.size());
  unsigned i = 1;
  while (i < n) {
    if (p[i - 1] > p[i]) {
      out.push_back(static_cast<int>(i));
      std::swap(p[i - 1], p[i]);
      i = i > 1 ? i - 1 : 1;
    } else {
      ++i;
    }
  }
}

// Core: left-weight a positive factor sequence standing right of Delta^d.
GarsideNormalForm finish_factors(unsigned strands, long long delta, std::vector<Factor> factors) {
  std::erase_if(factors, [](const Factor& f) { return is_identity_images(f.perm); });
  bool changed = !factors.empty();
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < factors.size(); ++j)
      if (slide_pair(factors[j], factors[j + 1])) changed = true;
    if (changed)
      std::erase_if(factors, [](const Factor& f) { return is_identity_images(f.perm); });
  }
  const Images delta_perm = delta_images(strands);
  std::size_t lead = 0;
  while (lead < factors.size() && factors[lead].perm == delta_perm) ++lead;

  GarsideNormalForm out;
  out.strands = strands;
  out.delta_power = delta + static_cast<long long>(lead);
  out.factors.reserve(factors.size() - lead);
  for (std::size_t j = lead; j < factors.size(); ++j)
    out.factors.emplace_back(Images(std::move(factors[j].perm)));
  return out;
}

// A mixed sequence of Delta powers and permutation-braid factors, normalized
// by carrying every Delta power to the front. A factor with delta sum c still
// to its right picks up tau^c.
struct TokenStream {
  unsigned strands;
  long long delta = 0;                          // running total
  std::vector<std::pair<Images, long long>> factors;  // factor, deltas seen before it

  explicit TokenStream(unsigned n) : strands(n) {}
  void push_delta(long long power) { delta += power; }
  void push_factor(Images p) {
    if (!is_identity_images(p)) factors.emplace_back(std::move(p), delta);
  }
  GarsideNormalForm normalize() && {
    std::vector<Factor> fs;
    fs.reserve(factors.size());
    for (auto& [perm, before] : factors) {
      long long suffix = delta - before;
      fs.emplace_back(((suffix % 2) != 0) ? flip_images(perm) : std::move(perm));
    }
    return finish_factors(strands, delta, std::move(fs));
  }
};

}  // namespace

GarsideNormalForm normal_form(const BraidWord& word, unsigned strands) {
  if (strands < 1) throw std::invalid_argument("strand count must be >= 1");
  if (word.max_index() + 1 > strands)
    throw std::out_of_range("letter index out of range for strand count");

  TokenStream stream(strands);
  const unsigned n = strands;
  for (int l : word.letters()) {
    unsigned i = static_cast<unsigned>(std::abs(l));
    if (l > 0) {
      Images p = identity_images(n);
      std::swap(p[i - 1], p[i]);
      stream.push_factor(std::move(p));
    } else {
      // sigma_i^{-1} = Delta^{-1} . (Delta sigma_i^{-1}); the second piece is
      // the permutation braid k -> t_i(w(k)).
      stream.push_delta(-1);
      Images p(n);
      for (unsigned k = 1; k <= n; ++k) {
        unsigned v = n + 1 - k;
        if (v == i) v = i + 1;
        else if (v == i + 1) v = i;
        p[k - 1] = static_cast<std::uint8_t>(v);
      }
      stream.push_factor(std::move(p));
    }
  }
  return std::move(stream).normalize();
}

BraidWord GarsideNormalForm::to_word() const {
  std::vector<int> letters;
  if (delta_power != 0 && strands >= 2) {
    std::vector<int> dword;
    append_factor_word(delta_images(strands), dword);
    if (delta_power > 0) {
      for (long long r = 0; r < delta_power; ++r)
        letters.insert(letters.end(), dword.begin(), dword.end());
    } else {
      std::vector<int> dinv(dword.rbegin(), dword.rend());
      for (int& l : dinv) l = -l;
      for (long long r = 0; r < -delta_power; ++r)
        letters.insert(letters.end(), dinv.begin(), dinv.end());
    }
  }
  for (const Permutation& f : factors) append_factor_word(f.images(), letters);
  return BraidWord(std::move(letters));
}

std::string GarsideNormalForm::to_text() const {
  std::string out = "N=" + std::to_string(strands) + " d=" + std::to_string(delta_power);
  for (const Permutation& f : factors) out += " [" + f.to_text() + "]";
  return out;
}

bool braid_equal(const BraidWord& x, const BraidWord& y) {
  unsigned n = std::max({1u, x.max_index() + 1, y.max_index() + 1});
  return normal_form(x, n) == normal_form(y, n);
}

BraidWord canonical_braid_word(const BraidWord& x, unsigned strands) {
  return normal_form(x, strands).to_word();
}

bool braid_is_trivial(const BraidWord& x) {
  return normal_form(x, std::max(1u, x.max_index() + 1)).is_identity();
}

// --- normal-form arithmetic -----------------------------------------------------

BraidValue BraidValue::from_word(const BraidWord& word) {
  return from_word(word, std::max(1u, word.max_index() + 1));
}

BraidValue BraidValue::from_word(const BraidWord& word, unsigned strands) {
  BraidValue v;
  v.nf_ = normal_form(word, strands);
  return v;
}

BraidValue BraidValue::from_nf(GarsideNormalForm nf) {
  BraidValue v;
  v.nf_ = std::move(nf);
  return v;
}

BraidValue BraidValue::at_strands(unsigned strands) const {
  if (strands == nf_.strands) return *this;
  if (strands < nf_.strands)
    throw std::invalid_argument("cannot shrink the ambient braid group");
  const unsigned small = nf_.strands;
  TokenStream stream(strands);
  // Delta_small^d re-expands into permutation braids of the larger group.
  if (nf_.delta_power != 0 && small >= 2) {
    Images embedded_delta = identity_images(strands);
    for (unsigned k = 1; k <= small; ++k) embedded_delta[k - 1] = static_cast<std::uint8_t>(small + 1 - k);
    if (nf_.delta_power > 0) {
      for (long long r = 0; r < nf_.delta_power; ++r) stream.push_factor(Images(embedded_delta));
    } else {
      // Delta_small^{-1} = Delta^{-1} . (Delta Delta_small^{-1})
      Images inv_embedded = invert_images(embedded_delta);
      Images comp(strands);
      const Images big_delta = delta_images(strands);
      for (unsigned k = 1; k <= strands; ++k) comp[k - 1] = inv_embedded[big_delta[k - 1] - 1];
      for (long long r = 0; r < -nf_.delta_power; ++r) {
        stream.push_delta(-1);
        stream.push_factor(Images(comp));
      }
    }
  }
  for (const Permutation& f : nf_.factors) {
    Images p = identity_images(strands);
    for (unsigned k = 1; k <= small; ++k) p[k - 1] = f.images()[k - 1];
    stream.push_factor(std::move(p));
  }
  return from_nf(std::move(stream).normalize());
}

BraidValue BraidValue::operator*(const BraidValue& rhs) const {
  unsigned n = std::max(nf_.strands, rhs.nf_.strands);
  GarsideNormalForm a = at_strands(n).nf_;
  GarsideNormalForm b = rhs.at_strands(n).nf_;
  TokenStream stream(n);
  stream.push_delta(a.delta_power);
  for (const Permutation& f : a.factors) stream.push_factor(Images(f.images()));
  stream.push_delta(b.delta_power);
  for (const Permutation& f : b.factors) stream.push_factor(Images(f.images()));
  return from_nf(std::move(stream).normalize());
}

BraidValue BraidValue::inverse() const {
  const unsigned n = nf_.strands;
  TokenStream stream(n);
  // (Delta^d A_1 ... A_k)^{-1} = A_k^{-1} ... A_1^{-1} Delta^{-d}, and each
  // A^{-1} = Delta^{-1} . (Delta A^{-1}) with Delta A^{-1} a permutation
  // braid: k -> A^{-1}(w(k)).
  const Images w = delta_images(n);
  for (auto it = nf_.factors.rbegin(); it != nf_.factors.rend(); ++it) {
    Images inv = invert_images(it->images());
    Images comp(n);
    for (unsigned k = 1; k <= n; ++k) comp[k - 1] = inv[w[k - 1] - 1];
    stream.push_delta(-1);
    stream.push_factor(std::move(comp));
  }
  stream.push_delta(-nf_.delta_power);
  return from_nf(std::move(stream).normalize());
}

BraidValue BraidValue::shifted(unsigned p) const {
  if (p == 0) return *this;
  const unsigned small = nf_.strands;
  const unsigned n = small + p;
  TokenStream stream(n);
  // shift^p(Delta_small) is a permutation braid of the larger group:
  // fixed on 1..p, reversing p+1..p+small.
  if (nf_.delta_power != 0 && small >= 2) {
    Images shifted_delta = identity_images(n);
    for (unsigned k = 1; k <= small; ++k)
      shifted_delta[p + k - 1] = static_cast<std::uint8_t>(p + small + 1 - k);
    if (nf_.delta_power > 0) {
      for (long long r = 0; r < nf_.delta_power; ++r) stream.push_factor(Images(shifted_delta));
    } else {
      Images inv_shifted = invert_images(shifted_delta);
      Images comp(n);
      const Images big_delta = delta_images(n);
      for (unsigned k = 1; k <= n; ++k) comp[k - 1] = inv_shifted[big_delta[k - 1] - 1];
      for (long long r = 0; r < -nf_.delta_power; ++r) {
        stream.push_delta(-1);
        stream.push_factor(Images(comp));
      }
    }
  }
  for (const Permutation& f : nf_.factors) {
    Images q = identity_images(n);
    for (unsigned k = 1; k <= small; ++k)
      q[p + k - 1] = static_cast<std::uint8_t>(p + f.images()[k - 1]);
    stream.push_factor(std::move(q));
  }
  return from_nf(std::move(stream).normalize());
}

bool BraidValue::equals(const BraidValue& rhs) const {
  unsigned n = std::max(nf_.strands, rhs.nf_.strands);
  return at_strands(n).nf_ == rhs.at_strands(n).nf_;
}

}  // namespace ldkep
