// SPDX-License-Identifier: MIT
// LP backend: supermodular set functions over P(N), their induced CI
// models, and exact rational feasibility queries about the supermodular
// cone (phase-I simplex with Bland's rule; every verdict carries an exact
// certificate that is re-verified).

#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cistruct/bitset.hpp"
#include "cistruct/ground.hpp"
#include "cistruct/model.hpp"
#include "cistruct/types.hpp"

namespace cistruct::lp {

using Rational = mpq_class;

// Supermodularity guard: the LP formulations materialize all 2^n subset
// values, so the ground set is capped well below kMaxGround.
inline constexpr int kMaxLpGround = 8;

// A set function m : P(N) -> Q, values indexed by subset bitmask.
struct SetFunction {
  GroundPtr ground;
  std::vector<Rational> values;  // size 2^n

  const Rational& at(uint16_t mask) const { return values[mask]; }
};

// The supermodular difference  D_m(ij|K) = m(ijK) + m(K) - m(iK) - m(jK).
Rational delta(const SetFunction& m, const Statement& s);

// Is m supermodular (all D_m >= 0)?  Optionally reports a violated
// statement.
bool check_supermodular(const SetFunction& m, Statement* violation = nullptr);

// Induced CI model: the statements with vanishing supermodular difference.
// Throws InvalidArgument when m is not supermodular.
Model induced_model(const SetFunction& m);

// Standardization: adjust by a modular function so that m(emptyset) = 0 and
// m({v}) = 0 for all v.  Does not change any D_m value.
SetFunction standardize(const SetFunction& m);

// ---------------------------------------------------------------------------
// Feasibility queries
// ---------------------------------------------------------------------------

// Is there a supermodular m with D_m = 0 on zero_set and D_m(target) >= c?
// (c > 0; the answer is independent of c by scaling, which tests exploit.)
// Reference semantics of the structural-closure membership test:
// `target` lies in the structural closure of `zero_set` iff this is
// infeasible.  Throws CapError when |N| > kMaxLpGround.
bool supermodular_feasible(const GroundSet& g, const Bitset& zero_set,
                           int target, const Rational& c = 1);

// Like supermodular_feasible, but on success also returns a witness
// function (standardized, exact).
std::optional<SetFunction> supermodular_witness(const GroundPtr& g,
                                                const Bitset& zero_set,
                                                const Bitset& gap_targets,
                                                const Rational& c = 1);

// Structural closure of the statements `zero_set`, restricted to the given
// candidate statements: returns the subset of `candidates` lying in the
// closure.  Implemented with accumulated exact witnesses: each feasible LP
// yields a supermodular witness that removes all candidates with positive
// difference; an infeasible LP proves the remaining candidates belong to
// the closure.  Equivalent to per-candidate supermodular_feasible (asserted
// in tests).
Bitset structural_closure_subset(const GroundPtr& g, const Bitset& zero_set,
                                 const Bitset& candidates);

// A supermodular function whose induced model is exactly the structural
// closure of M; nullopt when that closure is the full universe.  When M is
// structural this is an exact representative (mod r = M).
std::optional<SetFunction> interior_representative(const GroundPtr& g,
                                                   const Bitset& m);

// Modular combination of r with a copy of itself glued along L: on the
// doubled ground set O = N u N' (see doubled_ground),
//   r2(S) = r(S n N) + r(phi^{-1}(S n (L u N'))) - r(S n L).
// Restricts to r on P(N) and vanishes on all statements that mix the two
// sides.  Supermodularity of r2 is *not* automatic; when it holds, r2
// certifies self-adhesion of mod r at L (checked by the caller).
SetFunction modular_combination(const SetFunction& r, const DoubledGround& dg);

}  // namespace cistruct::lp
