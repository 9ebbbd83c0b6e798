// SPDX-License-Identifier: MIT
// CNF clause sets over statement variables, and the generators for the
// supported frames.  Variables are statement indices; a literal is encoded
// DIMACS-style as +(index+1) / -(index+1).

#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "cistruct/ground.hpp"
#include "cistruct/implication.hpp"
#include "cistruct/model.hpp"
#include "cistruct/types.hpp"

namespace cistruct {

struct ClauseSet {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  // Adds a clause unless it is tautological or a duplicate of an earlier
  // one (literals are compared as sets).
  void add(std::vector<int> lits);

  // Does the characteristic assignment of `bits` satisfy every clause?
  bool satisfied_by(const Bitset& bits) const;

 private:
  struct LitsHash {
    size_t operator()(const std::vector<int>& v) const {
      size_t h = 1469598103934665603ull;
      for (int x : v) h = (h ^ size_t(uint32_t(x))) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_set<std::vector<int>, LitsHash> seen_;
};

// Semigraphoid axioms over n variables: for every instance (i, {j,l}, K)
// the equivalence  ij|K & il|jK  <=>  il|K & ij|lK, expanded into 4 clauses.
// Clause count: n * C(n-1,2) * 2^(n-3) * 4.
ClauseSet semigraphoid_clauses(int n);

// Graphoid = semigraphoid + intersection:  ij|lK & il|jK  =>  ij|K & il|K.
ClauseSet graphoid_clauses(int n);

// Compositional semigraphoid = semigraphoid + composition (the reverse
// implication:  ij|K & il|K  =>  ij|lK & il|jK).
ClauseSet comp_semigraphoid_clauses(int n);

// Graphoid + composition.
ClauseSet comp_graphoid_clauses(int n);

// Axiomatization of the structural models over exactly 4 variables: all
// instances of the two semigraphoid implication types together with the
// five exchange rules (E:1)-(E:5), one clause per consequent.  No finite
// axiomatization is known for other sizes; throws InvalidArgument if n != 4.
ClauseSet structural_clauses_n4(int n);

// Clause set for a frame at ground size n (Structural requires n == 4).
ClauseSet frame_clauses(Frame f, int n);

// One clause per consequent element of every implication; when
// `with_symmetry` is set, all S_n images of each implication are
// instantiated first.  Duplicate and tautological clauses are dropped.
ClauseSet clauses_from_implications(const GroundSet& g,
                                    const std::vector<Implication>& impls,
                                    bool with_symmetry);

// ---------------------------------------------------------------------------
// Named inference-rule schemas (antecedents -> consequents over the four
// placeholders i, j, k, l), instantiated at a concrete injective assignment.
// Used by the frame generators and by tests that compare computed canonical
// bases against the published rule sets.
// ---------------------------------------------------------------------------

struct RuleSchema {
  const char* name;
  // Statements as triples over placeholder indices 0=i,1=j,2=k,3=l:
  // {a, b, condition mask over placeholders}.
  struct Stmt {
    uint8_t a, b, cond;
  };
  std::vector<Stmt> antecedents;
  std::vector<Stmt> consequents;
};

// The two semigraphoid implication types (canonical basis of the
// 4-variable semigraphoid lattice).
const std::vector<RuleSchema>& semigraphoid_basis_schemas();
// Exchange rules (E:1)-(E:5).
const std::vector<RuleSchema>& exchange_rule_schemas();
// Rules (SE:1)-(SE:2) and (SI:1)-(SI:5) for self-adhesive semigraphoids.
const std::vector<RuleSchema>& selfadhesive_rule_schemas();

// Instantiate a schema at an injective placeholder assignment `vars`
// (vars[p] = ground index of placeholder p; only placeholders that occur in
// the schema are read).
Implication instantiate_schema(const GroundSet& g, const RuleSchema& schema,
                               const std::vector<uint8_t>& vars);

// All S_n instances of the given schemas over g, duplicates removed.
std::vector<Implication> instantiate_schemas(
    const GroundSet& g, const std::vector<RuleSchema>& schemas);

}  // namespace cistruct
