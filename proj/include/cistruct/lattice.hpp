// SPDX-License-Identifier: MIT
// Lattice-theoretic analysis of model families: permutational orbits,
// meet-irreducible elements, coatoms, and canonical (Guigues-Duquenne)
// implication bases of Moore families given by a closure oracle.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cistruct/bitset.hpp"
#include "cistruct/ground.hpp"
#include "cistruct/implication.hpp"
#include "cistruct/types.hpp"

namespace cistruct {

// ---------------------------------------------------------------------------
// Families of models over sta(N)
// ---------------------------------------------------------------------------

struct OrbitClasses {
  // Canonical representative (minimum bitset over all relabelings) per
  // orbit, sorted; and for each input model the index of its orbit.
  std::vector<Bitset> representatives;
  std::vector<int> orbit_of;
  std::vector<int> orbit_sizes;  // number of distinct models in each orbit
};

// Lexicographically least image of `bits` under all n! relabelings.
Bitset orbit_canonical_form(const GroundSet& g, const Bitset& bits);
OrbitClasses orbit_classes(const GroundSet& g,
                           const std::vector<Bitset>& family);
int orbit_size(const GroundSet& g, const Bitset& bits);

// Meet-irreducible elements of the family: members that are not the
// intersection of their strict supersets (the top element never counts).
// The family must contain sta(N) and be closed under intersection.
std::vector<Bitset> meet_irreducibles(const std::vector<Bitset>& family,
                                      int universe);

// Coatoms: members whose only strict superset in the family is the top.
std::vector<Bitset> coatoms(const std::vector<Bitset>& family, int universe);

// ---------------------------------------------------------------------------
// Moore families and canonical bases over an abstract universe
// ---------------------------------------------------------------------------

// Closure oracle of a Moore family on {0..universe-1}.
struct MooreOracle {
  int universe = 0;
  std::function<Bitset(const Bitset&)> close;
};

// Oracle backed by an explicit family (closure = intersection of all
// members containing the set; the family must be intersection-closed and
// contain the top).
MooreOracle oracle_from_family(std::vector<Bitset> family, int universe);

// The canonical (Guigues-Duquenne) basis: one implication Q -> cl(Q) \ Q
// per pseudo-closed set Q.  Candidates are generated in lectic order as the
// fixpoints of proper-premise saturation under the partial basis
// (Next-Closure); the literal cardinality-ascending reference procedure is
// canonical_basis_by_cardinality below.
std::vector<Implication> canonical_basis(const MooreOracle& oracle);

// Reference implementation: scan all subsets by ascending cardinality,
// test pseudo-closedness via saturation under the partial basis, stop when
// the generated family size matches |F|.  Exponential; for small universes.
std::vector<Implication> canonical_basis_by_cardinality(
    const MooreOracle& oracle, uint64_t family_size);

// Number of sets closed under all the implications (the size of the Moore
// family the basis generates).  Counts by exhaustive scan for universe <=
// 26, otherwise by closure-system enumeration.
uint64_t count_closed_sets(const std::vector<Implication>& impls,
                           int universe);

// All sets closed under the implications.
std::vector<Bitset> closed_sets(const std::vector<Implication>& impls,
                                int universe, uint64_t cap = kDefaultModelCap);

// Is every pseudo-closed set (premise of the canonical basis)
// inclusion-minimal among non-closed sets?  `basis` must be the canonical
// basis of the oracle's family.
bool is_implicatively_perfect(const MooreOracle& oracle,
                              const std::vector<Implication>& basis);

// Canonical form of an implication under relabeling: the minimum, over all
// permutations, of the (antecedent, consequent) pair ordered by antecedent
// first.  Used to compare rule sets up to symmetry.
std::pair<Bitset, Bitset> implication_canonical_form(const GroundSet& g,
                                                     const Implication& impl);

// ---------------------------------------------------------------------------
// Catalogue summaries
// ---------------------------------------------------------------------------

struct CatalogueSummary {
  std::string family;
  uint64_t models = 0;
  uint64_t types = 0;
  uint64_t irreducibles = 0;
  uint64_t irreducible_types = 0;
  uint64_t coatoms_count = 0;
  uint64_t coatom_types = 0;
};

std::string summary_csv_header();
std::string summary_csv_row(const CatalogueSummary& s);

}  // namespace cistruct
