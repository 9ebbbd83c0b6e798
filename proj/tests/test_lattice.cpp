// Lattice cataloguing: orbit classification, irreducibles, coatoms,
// canonical implication bases and closed-set counting.
#include <algorithm>
#include <set>

#include "cistruct/closure.hpp"
#include "cistruct/io.hpp"
#include "cistruct/lattice.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cistruct;
using namespace testutil;

TEST_SUITE_BEGIN("lattice");

namespace {

Bitset bs(int universe, std::initializer_list<int> bits) {
  Bitset b(universe);
  for (int t : bits) b.set(t);
  return b;
}

// A five-element closure system over {x, y, z, w} = bits {0, 1, 2, 3}:
// the whole set, xyz, xyw, xy and x.
std::vector<Bitset> toy_family() {
  return {bs(4, {0, 1, 2, 3}), bs(4, {0, 1, 2}), bs(4, {0, 1, 3}),
          bs(4, {0, 1}), bs(4, {0})};
}

Implication imp(int universe, std::initializer_list<int> ant,
                std::initializer_list<int> cons) {
  return Implication{bs(universe, ant), bs(universe, cons)};
}

bool same_implications(std::vector<Implication> a, std::vector<Implication> b) {
  auto key = [](const Implication& i) {
    return std::make_pair(i.antecedent.to_indices(),
                          i.consequent.to_indices());
  };
  auto cmp = [&](const Implication& l, const Implication& r) {
    return key(l) < key(r);
  };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("closures, irreducibles and coatoms of the toy system") {
  std::vector<Bitset> family = toy_family();
  MooreOracle oracle = oracle_from_family(family, 4);
  CHECK(oracle.close(bs(4, {})) == bs(4, {0}));          // cl(0) = x
  CHECK(oracle.close(bs(4, {1})) == bs(4, {0, 1}));      // cl(y) = xy
  CHECK(oracle.close(bs(4, {0, 2})) == bs(4, {0, 1, 2}));  // cl(xz) = xyz
  std::vector<Bitset> irr = meet_irreducibles(family, 4);
  std::vector<Bitset> expect_irr = {bs(4, {0, 1, 2}), bs(4, {0, 1, 3}),
                                    bs(4, {0})};
  auto as_set = [](std::vector<Bitset> v) {
    std::set<std::vector<int>> s;
    for (const Bitset& b : v) s.insert(b.to_indices());
    return s;
  };
  CHECK(as_set(irr) == as_set(expect_irr));
  std::vector<Bitset> co = coatoms(family, 4);
  CHECK(as_set(co) ==
        as_set({bs(4, {0, 1, 2}), bs(4, {0, 1, 3})}));
  // Not coatomistic: x is irreducible but not a coatom.
  CHECK(as_set(co) != as_set(irr));
}

TEST_CASE("canonical basis of the toy system") {
  MooreOracle oracle = oracle_from_family(toy_family(), 4);
  std::vector<Implication> basis = canonical_basis(oracle);
  std::vector<Implication> expected = {
      imp(4, {}, {0}),        // nothing implies x
      imp(4, {0, 2}, {1}),    // xz implies y
      imp(4, {0, 3}, {1}),    // xw implies y
  };
  CHECK(same_implications(basis, expected));
  CHECK(same_implications(canonical_basis_by_cardinality(oracle, 5), basis));
  // Every basis implication is valid: saturating any closed set is a no-op.
  for (const Bitset& f : toy_family()) CHECK(saturate(basis, f) == f);
  // The premise xz is not inclusion-minimal among non-closed sets (the
  // empty set is already non-closed), so the basis is not perfect.
  CHECK(!is_implicatively_perfect(oracle, basis));
}

TEST_CASE("generators reproduce the toy system and are minimal") {
  std::vector<Implication> gen = {
      imp(4, {}, {0}),
      imp(4, {2}, {1}),
      imp(4, {0, 3}, {0, 1, 3}),
  };
  auto family_of = [&](const std::vector<Implication>& impls) {
    std::vector<Bitset> f = closed_sets(impls, 4);
    std::sort(f.begin(), f.end(), [](const Bitset& a, const Bitset& b) {
      return a.to_indices() < b.to_indices();
    });
    return f;
  };
  std::vector<Bitset> expect = toy_family();
  std::sort(expect.begin(), expect.end(),
            [](const Bitset& a, const Bitset& b) {
              return a.to_indices() < b.to_indices();
            });
  CHECK(family_of(gen) == expect);
  CHECK(count_closed_sets(gen, 4) == 5);
  // Dropping any of the three implications changes the closure system.
  for (size_t k = 0; k < gen.size(); ++k) {
    std::vector<Implication> smaller = gen;
    smaller.erase(smaller.begin() + k);
    CHECK(family_of(smaller) != expect);
  }
  // The even simpler generator with singleton premises also works.
  std::vector<Implication> simplest = {imp(4, {}, {0}), imp(4, {2}, {1}),
                                       imp(4, {3}, {1})};
  CHECK(family_of(simplest) == expect);
}

TEST_CASE("closed-set counting matches enumeration on random systems") {
  std::uniform_int_distribution<int> universe_d(4, 9);
  for (int k = 0; k < 20; ++k) {
    int u = universe_d(rng());
    std::uniform_int_distribution<int> bit(0, u - 1);
    std::vector<Implication> impls;
    for (int i = 0; i < 6; ++i) {
      Bitset a(u), c(u);
      for (int t = 0; t < 2; ++t) a.set(bit(rng()));
      for (int t = 0; t < 2; ++t) c.set(bit(rng()));
      impls.push_back(Implication{a, c});
    }
    std::vector<Bitset> family = closed_sets(impls, u);
    CHECK(count_closed_sets(impls, u) == family.size());
    for (const Bitset& f : family) CHECK(saturate(impls, f) == f);
  }
  CHECK(count_closed_sets({}, 10) == 1024);
}

TEST_CASE("orbit canonical forms are permutation invariants") {
  GroundPtr g = GroundSet::alphabetic(4);
  auto perms = all_permutations(4);
  for (int k = 0; k < 30; ++k) {
    Model m = random_model(g);
    Bitset canon = orbit_canonical_form(*g, m.bits());
    const auto& p = perms[size_t(k) % perms.size()];
    CHECK(orbit_canonical_form(*g, permute_model(m, p).bits()) == canon);
    CHECK(orbit_canonical_form(*g, canon) == canon);
    int size = orbit_size(*g, m.bits());
    CHECK(size >= 1);
    CHECK(24 % size == 0);  // orbit size divides |S_4|
  }
}

TEST_CASE("orbit classes partition the family") {
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 3);
  OrbitClasses oc = orbit_classes(*g, family);
  CHECK(oc.representatives.size() == 10);
  CHECK(oc.orbit_of.size() == family.size());
  uint64_t total = 0;
  for (int s : oc.orbit_sizes) total += uint64_t(s);
  CHECK(total == family.size());
  for (size_t k = 0; k < family.size(); ++k) {
    int o = oc.orbit_of[k];
    CHECK(orbit_canonical_form(*g, family[k]) == oc.representatives[o]);
  }
  CHECK(std::is_sorted(oc.representatives.begin(), oc.representatives.end(),
                       [](const Bitset& a, const Bitset& b) {
                         return a.to_indices() < b.to_indices();
                       }));
}

TEST_CASE("the three-variable semigraphoid lattice in detail") {
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 3);
  REQUIRE(family.size() == 22);
  CHECK(orbit_classes(*g, family).representatives.size() == 10);

  // Five irreducibles in three symmetry types; every one is a coatom.
  std::vector<Bitset> irr = meet_irreducibles(family, g->sta_size());
  std::vector<Bitset> co = coatoms(family, g->sta_size());
  CHECK(irr.size() == 5);
  CHECK(co.size() == 5);
  OrbitClasses irr_orbits = orbit_classes(*g, irr);
  CHECK(irr_orbits.representatives.size() == 3);
  std::set<std::set<std::string>> types;
  for (const Bitset& b : irr)
    types.insert(stmt_texts(Model(g, b)));
  std::set<std::set<std::string>> expected;
  expected.insert(texts({"a b |", "a c |", "b c |"}));
  expected.insert(texts({"a b | c", "a c | b", "b c | a"}));
  expected.insert(texts({"a b |", "a b | c", "a c |", "a c | b"}));
  for (const auto& t : expected)
    CHECK(std::any_of(types.begin(), types.end(),
                      [&](const std::set<std::string>& u) { return u == t; }));
  CHECK(orbit_size(*g, mk("ground: a b c\na b |\na c |\nb c |\n").bits()) == 1);
  CHECK(orbit_size(*g, mk("ground: a b c\na b | c\na c | b\nb c | a\n").bits()) ==
        1);
  CHECK(orbit_size(*g, mk("ground: a b c\na b |\na b | c\na c |\na c | b\n")
                            .bits()) == 3);

  // Every member is the intersection of the irreducibles above it.
  for (const Bitset& m : family) {
    if (int(m.count()) == g->sta_size()) continue;
    Bitset meet = Bitset(g->sta_size()).complement();
    for (const Bitset& i : irr)
      if (m.is_subset_of(i)) meet &= i;
    CHECK(meet == m);
  }

  // The canonical basis consists of six copies of a single exchange type
  // and is perfect.
  MooreOracle oracle = oracle_from_family(family, g->sta_size());
  std::vector<Implication> basis = canonical_basis(oracle);
  CHECK(basis.size() == 6);
  CHECK(same_implications(canonical_basis_by_cardinality(oracle, 22), basis));
  Implication type = parse_implications(
                         "ground: a b c\n"
                         "a b | ; a c | b => a c | ; a b | c\n")
                         .implications[0];
  auto canon = implication_canonical_form(*g, type);
  for (const Implication& i : basis)
    CHECK(implication_canonical_form(*g, i) == canon);
  CHECK(is_implicatively_perfect(oracle, basis));
}

TEST_CASE("implication canonical forms are invariant under relabeling") {
  GroundPtr g = GroundSet::alphabetic(4);
  ImplicationFile f = parse_implications(
      "ground: a b c d\n"
      "a b | c ; a c | d ; a d | b => a b | d ; a c | b ; a d | c\n"
      "b c | d ; b d | a ; b a | c => b c | a ; b d | c ; b a | d\n");
  // The second line is the first one relabeled by (a b c d) -> (b c d a)
  // with the pair/conditioning structure preserved.
  CHECK(implication_canonical_form(*g, f.implications[0]) ==
        implication_canonical_form(*g, f.implications[1]));
}

TEST_CASE("summary CSV layout") {
  CHECK(summary_csv_header() ==
        "family,models,types,irreducibles,irreducible_types,coatoms,"
        "coatom_types");
  CatalogueSummary s;
  s.family = "semgr3";
  s.models = 22;
  s.types = 10;
  s.irreducibles = 5;
  s.irreducible_types = 3;
  s.coatoms_count = 5;
  s.coatom_types = 3;
  CHECK(summary_csv_row(s) == "semgr3,22,10,5,3,5,3");
}

TEST_SUITE_END();
