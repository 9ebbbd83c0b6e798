// SPDX-License-Identifier: MIT
// CI models (subsets of sta(N)) and the elementary algebraic operations on
// them: copying along a bijection, marginalization, intersection, duality,
// ascetic extension, global-statement expansion, lifting, tight replication,
// least adhesions and undirected-graph separation models.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cistruct/bitset.hpp"
#include "cistruct/ground.hpp"

namespace cistruct {

class Model {
 public:
  Model() = default;
  explicit Model(GroundPtr g) : ground_(std::move(g)), bits_(ground_->sta_size()) {}
  Model(GroundPtr g, Bitset bits);

  const GroundPtr& ground() const { return ground_; }
  const Bitset& bits() const { return bits_; }
  Bitset& bits() { return bits_; }

  int size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_full() const { return bits_.count() == ground_->sta_size(); }

  bool contains(const Statement& s) const {
    return bits_.test(ground_->statement_index(s));
  }
  bool contains(int i, int j, uint16_t cond) const {
    return bits_.test(ground_->statement_index(i, j, cond));
  }
  void insert(const Statement& s) { bits_.set(ground_->statement_index(s)); }
  void insert(int i, int j, uint16_t cond) {
    bits_.set(ground_->statement_index(i, j, cond));
  }

  std::vector<Statement> statements() const;

  bool operator==(const Model& o) const;
  bool operator!=(const Model& o) const { return !(*this == o); }

 private:
  GroundPtr ground_;
  Bitset bits_;
};

// Throws InvalidArgument unless both models share the same ground labels.
void require_same_ground(const Model& a, const Model& b);

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

// Image of M under a bijection of ground sets; perm[v] = index in `target`
// of the image of variable v.  Ground sizes must agree.
Model copy_model(const Model& m, const GroundPtr& target,
                 const std::vector<uint8_t>& perm);

// Relabeling within the same ground set (copying along N -> N).
Model permute_model(const Model& m, const std::vector<uint8_t>& perm);

// Marginalization M|S: the statements with all variables inside S, as a
// model over the sub-ground set S (labels keep their relative order).
Model marginal(const Model& m, uint16_t s_mask);

// Intersection of two models over the same ground set.
Model intersect(const Model& a, const Model& b);

// Duality: ij|K -> ij|N\(K u ij).  An involution on sta(N).
Model dual(const Model& m);

// Ascetic extension: reinterpret M over a larger ground set O >= N without
// adding statements.  `embedding[v]` = index in O of variable v of N.
Model ascetic_extend(const Model& m, const GroundPtr& big,
                     const std::vector<uint8_t>& embedding);

// Least base set: the union of the variables of the statements of M.
uint16_t support_set(const Model& m);

// Expansion of the global statement [I, J | K] (pairwise disjoint masks):
// all ij|L with i in I, j in J and K <= L <= (I u J u K) \ {i,j}.
Model expand_global(const GroundPtr& g, uint16_t I, uint16_t J, uint16_t K);

// Does M contain the expansion of [I, J | K]?
bool contains_global(const Model& m, uint16_t I, uint16_t J, uint16_t K);

// Lifting M from its ground set N into a larger ground O (embedding as in
// ascetic_extend): keeps ij|K when {i,j} meets O\N, otherwise requires
// ij|(K n N) in M.
Model lift_model(const Model& m, const GroundPtr& big,
                 const std::vector<uint8_t>& embedding);

// Tight replication of variable u: adds a fresh variable v behaving as a
// tight copy of u.  ij|K over N+v belongs to the result iff the retraction
// rho (v -> u, identity otherwise) maps it to a valid statement of M, with
// the two conventions: a|b|C holds whenever {a,b} meets C, and the diagonal
// u|u|C (C subseteq L := N\{u}) holds iff M contains the expansion of
// [{u}, L\C | C].  `v_label` empty = fresh primed label derived from u's.
Model tight_replicate(const Model& m, int u, const std::string& v_label = "");

// Least adhesion of consonant models M over N and M2 over N2 (the ground
// sets may share variables; consonance means M|L = M2|L for L = N n N2).
// Result is over N u N2 (labels of N first, then the new labels of N2 in
// their own order).  Throws InvalidArgument when not consonant.
Model least_adhesion(const Model& m, const Model& m2);

// Separation model of an undirected graph on g: ij|K in M(G) iff every path
// from i to j in G meets K.  `edges` lists unordered pairs of indices.
Model graph_separation_model(const GroundPtr& g,
                             const std::vector<std::pair<int, int>>& edges);

// ---------------------------------------------------------------------------
// Ground-set combination helpers
// ---------------------------------------------------------------------------

// A fresh label for `base` not colliding with `taken`: base + "'" repeated.
std::string fresh_primed_label(const std::string& base,
                               const std::vector<std::string>& taken);

// Ground set N u {copies of N\L}, labels of N first, then primed copies of
// the variables outside L in ascending order.  Outputs the embedding of N
// (identity prefix) and the map copy_of[v] (index of v's copy, or -1 for
// v in L).
struct DoubledGround {
  GroundPtr big;
  std::vector<uint8_t> embed_n;    // N -> big (identity prefix)
  std::vector<int> copy_of;        // v -> index of its fresh copy, -1 if v in L
  std::vector<uint8_t> bijection;  // N -> big: v in L -> v, else copy_of[v]
  uint16_t l_mask_big = 0;         // L inside big
  uint16_t n_mask_big = 0;         // N inside big
  uint16_t copies_mask_big = 0;    // fresh copies inside big
};
DoubledGround doubled_ground(const GroundSet& g, uint16_t l_mask);

// k-fold version: k independent copies of N\L with labels like "a'1".
struct ReplicatedGround {
  GroundPtr big;
  std::vector<uint8_t> embed_n;
  // bijections[c] maps N into copy c (1-based; copy 0 is N itself).
  std::vector<std::vector<uint8_t>> bijections;
  std::vector<uint16_t> copy_masks;  // mask of N_c inside big, c = 0..k
  uint16_t l_mask_big = 0;
};
ReplicatedGround replicated_ground(const GroundSet& g, uint16_t l_mask, int k);

}  // namespace cistruct
