// SPDX-License-Identifier: MIT
// Ground sets and the canonical indexing of conditional-independence
// statements.
//
// For a ground set N with n = |N| variables, the statement universe sta(N)
// consists of all ij|K with i < j and K subseteq N \ {i,j}; its size is
// C(n,2) * 2^(n-2).  The canonical index of ij|K is
//
//     pair_rank(i,j) * 2^(n-2) + cond_rank(K)
//
// where pairs are ranked lexicographically ((0,1), (0,2), ..., (n-2,n-1))
// and cond_rank reads K as a little-endian bitmask over the ascending list
// of the n-2 variables other than i and j.  This layout is part of the
// on-disk and DIMACS contracts and must not change.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cistruct/types.hpp"

namespace cistruct {

// A single CI statement ij|K over some ground set, in index form:
// 0 <= i < j < n and cond a bitmask of ground indices disjoint from {i,j}.
struct Statement {
  uint8_t i = 0;
  uint8_t j = 0;
  uint16_t cond = 0;

  bool operator==(const Statement&) const = default;
};

class GroundSet;
using GroundPtr = std::shared_ptr<const GroundSet>;

class GroundSet {
 public:
  // Labels must be non-empty, distinct, free of whitespace/'#'/',' and at
  // most kMaxGround many.  Throws InvalidArgument otherwise.
  explicit GroundSet(std::vector<std::string> labels);

  static GroundPtr make(std::vector<std::string> labels) {
    return std::make_shared<GroundSet>(std::move(labels));
  }
  // Convenience: first n letters a, b, c, ...  (n <= 12).
  static GroundPtr alphabetic(int n);

  int size() const { return n_; }
  int sta_size() const { return sta_size_; }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Index of a label, or -1 when absent.
  int index_of(const std::string& label) const;

  bool same_labels(const GroundSet& o) const { return labels_ == o.labels_; }

  int pair_rank(int i, int j) const;  // requires i < j
  int statement_index(const Statement& s) const;
  int statement_index(int i, int j, uint16_t cond) const;
  Statement statement_at(int index) const;

  // Mask with all n ground bits set.
  uint16_t full_mask() const { return uint16_t((1u << n_) - 1); }

  // Renders "i j | k1 k2" (no trailing space when K is empty: "i j |").
  std::string statement_text(const Statement& s) const;

 private:
  std::vector<std::string> labels_;
  int n_ = 0;
  int cond_count_ = 0;  // 2^(n-2)
  int sta_size_ = 0;
  std::vector<int> pair_offset_;                      // by i
  std::vector<std::pair<uint8_t, uint8_t>> pair_at_;  // by pair rank
};

// Statements of sta(N) listed in canonical index order.
std::vector<Statement> all_statements(const GroundSet& g);

// Subset enumeration helper: all submasks of `mask` (including 0 and mask)
// in ascending numeric order.
std::vector<uint16_t> submasks_of(uint16_t mask);

// Subsets of {0..n-1} ordered by cardinality, then lexicographically by the
// ascending element tuple; sizes restricted to [min_size, max_size].
std::vector<uint16_t> subsets_by_size(int n, int min_size, int max_size);

// All n! permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<uint8_t>> all_permutations(int n);

// Image of each statement index under the ground permutation `perm`
// (perm[v] = image of variable v): result[idx] = idx'.
std::vector<int> statement_permutation(const GroundSet& g,
                                       const std::vector<uint8_t>& perm);

}  // namespace cistruct
