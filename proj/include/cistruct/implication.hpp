// SPDX-License-Identifier: MIT
// Implications between sets of items of a finite universe.  Used both for
// CI inference rules (universe = sta(N)) and for canonical bases of
// arbitrary Moore families.

#pragma once

#include <vector>

#include "cistruct/bitset.hpp"

namespace cistruct {

struct Implication {
  Bitset antecedent;
  Bitset consequent;

  bool operator==(const Implication& o) const {
    return antecedent == o.antecedent && consequent == o.consequent;
  }
};

// Saturation of `start` under a list of implications: repeatedly add the
// consequent of every implication whose antecedent is contained in the
// current set, until a fixpoint.  (The closure operator generated by the
// implications.)
Bitset saturate(const std::vector<Implication>& impls, Bitset start);

// Variant used by canonical-basis computation: an implication fires only
// when its antecedent is a *proper* subset of the current set.
Bitset saturate_proper(const std::vector<Implication>& impls, Bitset start);

}  // namespace cistruct
