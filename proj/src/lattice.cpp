// SPDX-License-Identifier: MIT

#include "cistruct/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cistruct {

Bitset saturate(const std::vector<Implication>& impls, Bitset start) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Implication& imp : impls) {
      if (imp.antecedent.is_subset_of(start) &&
          !imp.consequent.is_subset_of(start)) {
        start |= imp.consequent;
        changed = true;
      }
    }
  }
  return start;
}

Bitset saturate_proper(const std::vector<Implication>& impls, Bitset start) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Implication& imp : impls) {
      if (imp.antecedent.is_subset_of(start) &&
          !(imp.antecedent == start) && !imp.consequent.is_subset_of(start)) {
        start |= imp.consequent;
        changed = true;
      }
    }
  }
  return start;
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> statement_maps(const GroundSet& g) {
  std::vector<std::vector<int>> maps;
  for (const std::vector<uint8_t>& perm : all_permutations(g.size()))
    maps.push_back(statement_permutation(g, perm));
  return maps;
}

Bitset apply_map(const Bitset& bits, const std::vector<int>& map) {
  Bitset out(bits.size());
  bits.for_each_set([&](int k) { out.set(map[k]); });
  return out;
}

}  // namespace

Bitset orbit_canonical_form(const GroundSet& g, const Bitset& bits) {
  Bitset best = bits;
  for (const std::vector<int>& map : statement_maps(g)) {
    Bitset img = apply_map(bits, map);
    if (img < best) best = std::move(img);
  }
  return best;
}

OrbitClasses orbit_classes(const GroundSet& g,
                           const std::vector<Bitset>& family) {
  std::vector<std::vector<int>> maps = statement_maps(g);
  OrbitClasses oc;
  oc.orbit_of.resize(family.size());
  std::unordered_map<Bitset, int, BitsetHash> id_of;
  std::vector<Bitset> reps;
  std::vector<int> sizes;
  for (size_t i = 0; i < family.size(); ++i) {
    auto it = id_of.find(family[i]);
    if (it != id_of.end()) {  // an image seen before
      oc.orbit_of[i] = it->second;
      continue;
    }
    Bitset canon = family[i];
    std::unordered_set<Bitset, BitsetHash> images;
    for (const std::vector<int>& map : maps) {
      Bitset img = apply_map(family[i], map);
      if (img < canon) canon = img;
      images.insert(std::move(img));
    }
    int id = int(reps.size());
    reps.push_back(std::move(canon));
    sizes.push_back(int(images.size()));
    for (const Bitset& img : images) id_of.emplace(img, id);
    oc.orbit_of[i] = id;
  }
  // Re-index so that representatives come out sorted.
  std::vector<int> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return reps[a] < reps[b]; });
  std::vector<int> rank(reps.size());
  for (size_t k = 0; k < order.size(); ++k) rank[order[k]] = int(k);
  oc.representatives.resize(reps.size(), Bitset(0));
  oc.orbit_sizes.resize(reps.size());
  for (size_t k = 0; k < reps.size(); ++k) {
    oc.representatives[rank[k]] = std::move(reps[k]);
    oc.orbit_sizes[rank[k]] = sizes[k];
  }
  for (int& id : oc.orbit_of) id = rank[id];
  return oc;
}

int orbit_size(const GroundSet& g, const Bitset& bits) {
  std::unordered_set<Bitset, BitsetHash> images;
  for (const std::vector<int>& map : statement_maps(g))
    images.insert(apply_map(bits, map));
  return int(images.size());
}

// ---------------------------------------------------------------------------
// Irreducibles and coatoms
// ---------------------------------------------------------------------------

std::vector<Bitset> meet_irreducibles(const std::vector<Bitset>& family,
                                      int universe) {
  std::vector<Bitset> out;
  for (const Bitset& m : family) {
    if (int(m.count()) == universe) continue;  // the top element
    Bitset meet = Bitset(universe).complement();
    bool reducible = false;
    for (const Bitset& f : family) {
      if (!(m.is_subset_of(f)) || f == m) continue;
      meet &= f;
      if (meet == m) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(m);
  }
  return out;
}

std::vector<Bitset> coatoms(const std::vector<Bitset>& family, int universe) {
  std::vector<Bitset> out;
  for (const Bitset& m : family) {
    if (int(m.count()) == universe) continue;
    int supersets = 0;
    for (const Bitset& f : family) {
      if (m.is_subset_of(f) && !(f == m) && ++supersets > 1) break;
    }
    if (supersets == 1) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moore families and canonical bases
// ---------------------------------------------------------------------------

MooreOracle oracle_from_family(std::vector<Bitset> family, int universe) {
  MooreOracle oracle;
  oracle.universe = universe;
  oracle.close = [family = std::move(family), universe](const Bitset& q) {
    Bitset meet = Bitset(universe).complement();
    for (const Bitset& f : family)
      if (q.is_subset_of(f)) meet &= f;
    return meet;
  };
  return oracle;
}

namespace {

// Lectic successor among the fixpoints of `fix` (a closure operator given
// as a callable Bitset -> Bitset).  Returns false when `a` was the last
// fixpoint.  On entry `a` must be a fixpoint; on exit it is the next one.
template <typename F>
bool next_fixpoint(int universe, const F& fix, Bitset& a) {
  Bitset work = a;
  for (int i = universe - 1; i >= 0; --i) {
    if (work.test(i)) {
      work.reset(i);
      continue;
    }
    Bitset probe = work;
    probe.set(i);
    Bitset b = fix(probe);
    // Successor iff b adds nothing below i.
    Bitset added = b;
    added -= work;
    bool ok = true;
    for (int t = added.next_set_bit(0); t != -1 && t < i;
         t = added.next_set_bit(t + 1)) {
      ok = false;
      break;
    }
    if (ok) {
      a = std::move(b);
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Implication> canonical_basis(const MooreOracle& oracle) {
  std::vector<Implication> basis;
  auto sat = [&](const Bitset& q) { return saturate_proper(basis, q); };
  Bitset a(oracle.universe);  // the saturation of the empty set is empty
  for (;;) {
    Bitset closed = oracle.close(a);
    if (!(closed == a)) {
      Bitset gain = closed;
      gain -= a;
      basis.push_back(Implication{a, std::move(gain)});
    }
    if (!next_fixpoint(oracle.universe, sat, a)) break;
  }
  return basis;
}

namespace {

// All subsets of {0..universe-1} of the given cardinality, in ascending
// numeric order, as bitsets.
void for_each_subset_of_size(int universe, int card,
                             const std::function<void(const Bitset&)>& f) {
  std::vector<int> idx(card);
  std::iota(idx.begin(), idx.end(), 0);
  if (card > universe) return;
  for (;;) {
    Bitset b(universe);
    for (int v : idx) b.set(v);
    f(b);
    int k = card - 1;
    while (k >= 0 && idx[k] == universe - card + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int t = k + 1; t < card; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

std::vector<Implication> canonical_basis_by_cardinality(
    const MooreOracle& oracle, uint64_t family_size) {
  if (oracle.universe > 20)
    throw InvalidArgument(
        "the cardinality-ascending reference procedure is exponential; use "
        "canonical_basis for universes beyond 20 items");
  std::vector<Implication> basis;
  for (int card = 0; card <= oracle.universe; ++card) {
    if (count_closed_sets(basis, oracle.universe) == family_size) return basis;
    for_each_subset_of_size(oracle.universe, card, [&](const Bitset& q) {
      if (!(saturate_proper(basis, q) == q)) return;  // not saturated
      Bitset closed = oracle.close(q);
      if (closed == q) return;  // closed, not pseudo-closed
      Bitset gain = closed;
      gain -= q;
      basis.push_back(Implication{q, std::move(gain)});
    });
  }
  return basis;
}

uint64_t count_closed_sets(const std::vector<Implication>& impls,
                           int universe) {
  if (universe <= 20) {
    uint64_t count = 0;
    for (uint32_t mask = 0; mask < (uint32_t(1) << universe); ++mask) {
      Bitset q(universe);
      for (int v = 0; v < universe; ++v)
        if (mask & (uint32_t(1) << v)) q.set(v);
      bool closed = true;
      for (const Implication& imp : impls) {
        if (imp.antecedent.is_subset_of(q) && !imp.consequent.is_subset_of(q)) {
          closed = false;
          break;
        }
      }
      if (closed) ++count;
    }
    return count;
  }
  uint64_t count = 0;
  auto fix = [&](const Bitset& q) { return saturate(impls, q); };
  Bitset a = saturate(impls, Bitset(universe));
  for (;;) {
    ++count;
    if (!next_fixpoint(universe, fix, a)) break;
  }
  return count;
}

std::vector<Bitset> closed_sets(const std::vector<Implication>& impls,
                                int universe, uint64_t cap) {
  std::vector<Bitset> out;
  auto fix = [&](const Bitset& q) { return saturate(impls, q); };
  Bitset a = saturate(impls, Bitset(universe));
  for (;;) {
    if (out.size() >= cap)
      throw CapError("closed-set enumeration exceeded the cap of " +
                     std::to_string(cap) + " sets");
    out.push_back(a);
    if (!next_fixpoint(universe, fix, a)) break;
  }
  return out;
}

bool is_implicatively_perfect(const MooreOracle& oracle,
                              const std::vector<Implication>& basis) {
  for (const Implication& imp : basis) {
    std::vector<int> items = imp.antecedent.to_indices();
    if (items.size() > 20)
      throw InvalidArgument("premise too large for the perfection test");
    for (uint32_t sub = 0; sub + 1 < (uint32_t(1) << items.size()); ++sub) {
      Bitset q(oracle.universe);
      for (size_t t = 0; t < items.size(); ++t)
        if (sub & (uint32_t(1) << t)) q.set(items[t]);
      if (!(oracle.close(q) == q)) return false;
    }
  }
  return true;
}

std::pair<Bitset, Bitset> implication_canonical_form(const GroundSet& g,
                                                     const Implication& impl) {
  std::pair<Bitset, Bitset> best{impl.antecedent, impl.consequent};
  for (const std::vector<int>& map : statement_maps(g)) {
    std::pair<Bitset, Bitset> img{apply_map(impl.antecedent, map),
                                  apply_map(impl.consequent, map)};
    if (img < best) best = std::move(img);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Catalogue summaries
// ---------------------------------------------------------------------------

std::string summary_csv_header() {
  return "family,models,types,irreducibles,irreducible_types,coatoms,"
         "coatom_types";
}

std::string summary_csv_row(const CatalogueSummary& s) {
  std::ostringstream out;
  out << s.family << ',' << s.models << ',' << s.types << ','
      << s.irreducibles << ',' << s.irreducible_types << ','
      << s.coatoms_count << ',' << s.coatom_types;
  return out.str();
}

}  // namespace cistruct
