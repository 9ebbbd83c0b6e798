// SPDX-License-Identifier: MIT
// Fixed-width dynamic bitset used to represent CI models as subsets of the
// statement universe sta(N).  Sized at construction; all binary operations
// require operands of equal width.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cistruct {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }
  bool empty_domain() const { return nbits_ == 0; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  void assign(int i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  // Set difference: keeps the bits not present in `o`.
  Bitset& operator-=(const Bitset& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  // Complement within the declared width.
  Bitset complement() const {
    Bitset r(nbits_);
    for (size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
    r.trim();
    return r;
  }

  bool is_subset_of(const Bitset& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  bool operator==(const Bitset& o) const {
    return nbits_ == o.nbits_ && w_ == o.w_;
  }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Total order: compares the sets as integers with bit 0 least significant.
  // Used wherever a deterministic ordering of models is needed.
  bool operator<(const Bitset& o) const {
    for (size_t k = w_.size(); k-- > 0;)
      if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
  }

  // Index of the lowest set bit at or after `from`; -1 if none.
  int next_set_bit(int from) const {
    if (from >= nbits_) return -1;
    size_t k = from >> 6;
    uint64_t w = w_[k] >> (from & 63);
    if (w) return from + __builtin_ctzll(w);
    for (++k; k < w_.size(); ++k)
      if (w_[k]) return int(k << 6) + __builtin_ctzll(w_[k]);
    return -1;
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (int i = next_set_bit(0); i >= 0; i = next_set_bit(i + 1)) f(i);
  }
  std::vector<int> to_indices() const {
    std::vector<int> v;
    v.reserve(count());
    for_each_set([&](int i) { v.push_back(i); });
    return v;
  }

  const std::vector<uint64_t>& words() const { return w_; }
  size_t hash() const {
    uint64_t h = 1469598103934665603ull ^ uint64_t(nbits_);
    for (uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return size_t(h);
  }

 private:
  void trim() {
    if (nbits_ & 63) w_.back() &= (uint64_t(1) << (nbits_ & 63)) - 1;
  }

  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace cistruct
