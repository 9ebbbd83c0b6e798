// Exact rational supermodularity machinery: deltas, induced models,
// standardization, the feasibility LP and structural closures.
#include "cistruct/io.hpp"
#include "cistruct/lp.hpp"
#include "cistruct/model.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cistruct;
using namespace testutil;

TEST_SUITE_BEGIN("lp");

namespace {

// Supermodular function over {a,b,c,d} whose induced model is
// {ab|, ab|c, ab|d, cd|ab}.
lp::SetFunction fixture_function() {
  GroundPtr g = GroundSet::alphabetic(4);
  std::vector<lp::Rational> v(16, 0);
  auto at = [&](std::initializer_list<int> vars) -> lp::Rational& {
    uint16_t mask = 0;
    for (int x : vars) mask |= uint16_t(1u << x);
    return v[mask];
  };
  at({0, 1, 2, 3}) = 12;
  at({0, 2, 3}) = 7;
  at({1, 2, 3}) = 7;
  at({0, 1, 2}) = 6;
  at({0, 1, 3}) = 6;
  at({0, 2}) = 3;
  at({0, 3}) = 3;
  at({1, 2}) = 3;
  at({1, 3}) = 3;
  at({2, 3}) = 3;
  return lp::SetFunction{g, std::move(v)};
}

lp::SetFunction random_function(const GroundPtr& g, int lo = -3, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<lp::Rational> v(size_t(1) << g->size());
  for (auto& q : v) q = d(rng());
  return lp::SetFunction{g, std::move(v)};
}

}  // namespace

TEST_CASE("deltas and the induced model of the fixture function") {
  lp::SetFunction m = fixture_function();
  const GroundSet& g = *m.ground;
  auto d = [&](const char* text) {
    Model one = parse_model("ground: a b c d\n" + std::string(text) + "\n");
    return lp::delta(m, one.statements()[0]);
  };
  CHECK(d("a b |") == 0);
  CHECK(d("a b | c") == 0);
  CHECK(d("a b | d") == 0);
  CHECK(d("c d | a b") == 0);
  CHECK(d("a b | c d") == 1);
  CHECK(d("c d |") == 3);
  CHECK(lp::check_supermodular(m));
  Model induced = lp::induced_model(m);
  CHECK(stmt_texts(induced) ==
        texts({"a b |", "a b | c", "a b | d", "c d | a b"}));
  (void)g;
}

TEST_CASE("supermodularity violations are reported") {
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<lp::Rational> v(8, 0);
  v[0b011] = 1;  // makes the difference at ac|b negative
  lp::SetFunction bad{g, v};
  Statement violation;
  CHECK(!lp::check_supermodular(bad, &violation));
  CHECK(lp::delta(bad, violation) < 0);
}

TEST_CASE("standardization preserves every delta and zeroes small sets") {
  for (int n : {3, 4}) {
    GroundPtr g = GroundSet::alphabetic(n);
    for (int k = 0; k < 25; ++k) {
      lp::SetFunction m = random_function(g);
      lp::SetFunction s = lp::standardize(m);
      CHECK(s.at(0) == 0);
      for (int v = 0; v < n; ++v) CHECK(s.at(uint16_t(1u << v)) == 0);
      for (const Statement& st : all_statements(*g))
        CHECK(lp::delta(m, st) == lp::delta(s, st));
    }
  }
  lp::SetFunction fix = lp::standardize(fixture_function());
  CHECK(lp::check_supermodular(fix));
  CHECK(lp::induced_model(fix) == lp::induced_model(fixture_function()));
}

TEST_CASE("feasibility is invariant under scaling of the gap") {
  GroundPtr g = GroundSet::alphabetic(4);
  for (int k = 0; k < 20; ++k) {
    Bitset zero = random_bits(*g, 1, 3);
    int target = std::uniform_int_distribution<int>(0, 23)(rng());
    if (zero.test(target)) zero.reset(target);
    bool f1 = lp::supermodular_feasible(*g, zero, target, 1);
    bool f7 = lp::supermodular_feasible(*g, zero, target, 7);
    bool f3 = lp::supermodular_feasible(*g, zero, target, lp::Rational(1, 3));
    CHECK(f1 == f7);
    CHECK(f1 == f3);
  }
}

TEST_CASE("witnesses are exact supermodular separators") {
  GroundPtr g = GroundSet::alphabetic(4);
  int found = 0;
  for (int k = 0; k < 30 && found < 8; ++k) {
    Bitset zero = random_bits(*g, 1, 4);
    Bitset targets = random_bits(*g, 1, 6);
    targets -= zero;
    if (targets.none()) continue;
    auto w = lp::supermodular_witness(g, zero, targets, 2);
    if (!w) continue;
    ++found;
    CHECK(lp::check_supermodular(*w));
    zero.for_each_set(
        [&](int s) { CHECK(lp::delta(*w, g->statement_at(s)) == 0); });
    targets.for_each_set(
        [&](int s) { CHECK(lp::delta(*w, g->statement_at(s)) >= 2); });
  }
  CHECK(found > 0);
}

TEST_CASE("structural closure equals per-candidate feasibility") {
  GroundPtr g = GroundSet::alphabetic(4);
  for (int k = 0; k < 15; ++k) {
    Bitset zero = random_bits(*g, 1, 5);
    Bitset candidates = zero.complement();
    Bitset closure = lp::structural_closure_subset(g, zero, candidates);
    candidates.for_each_set([&](int t) {
      bool separable = lp::supermodular_feasible(*g, zero, t);
      CHECK(closure.test(t) == !separable);
    });
  }
}

TEST_CASE("interior representatives induce exactly the closure") {
  GroundPtr g = GroundSet::alphabetic(4);
  // A structural model is reproduced on the nose.
  Model fix = lp::induced_model(fixture_function());
  auto rep = lp::interior_representative(g, fix.bits());
  REQUIRE(rep.has_value());
  CHECK(lp::check_supermodular(*rep));
  CHECK(lp::induced_model(*rep) == fix);
  // A non-structural semigraphoid grows to its structural closure, which
  // contains the exchange consequents ab|d, ac|b, ad|c.
  Model m = mk("ground: a b c d\na b | c\na c | d\na d | b\n");
  auto rep2 = lp::interior_representative(g, m.bits());
  REQUIRE(rep2.has_value());
  Model closed = lp::induced_model(*rep2);
  CHECK(m.bits().is_subset_of(closed.bits()));
  CHECK(closed != m);
  for (const char* s : {"a b | d", "a c | b", "a d | c"})
    CHECK(stmt_texts(closed).count(s) == 1);
  // Consistency with the closure computed statement by statement.
  Bitset direct = m.bits();
  direct |= lp::structural_closure_subset(g, m.bits(), m.bits().complement());
  CHECK(closed.bits() == direct);
  // The full model's closure is the whole universe: no separator exists.
  Bitset full = Bitset(g->sta_size()).complement();
  CHECK(!lp::interior_representative(g, full).has_value());
}

TEST_CASE("modular combinations restrict to the original function") {
  lp::SetFunction r = lp::standardize(fixture_function());
  const GroundPtr& g = r.ground;
  for (uint16_t l : {uint16_t(0b1100), uint16_t(0b0011), uint16_t(0b0110)}) {
    DoubledGround dg = doubled_ground(*g, l);
    lp::SetFunction r2 = lp::modular_combination(r, dg);
    // Restriction to P(N) is r itself.
    for (uint16_t s = 0; s < 16; ++s) CHECK(r2.at(s) == r.at(s));
    // Every statement pairing N\L with the copies has a vanishing delta.
    Model glob = expand_global(dg.big, uint16_t(dg.n_mask_big & ~l),
                               dg.copies_mask_big, dg.l_mask_big);
    for (const Statement& st : glob.statements())
      CHECK(lp::delta(r2, st) == 0);
  }
  // The cardinality function glues to itself supermodularly at every L.
  std::vector<lp::Rational> card(16);
  for (uint16_t s = 0; s < 16; ++s) card[s] = __builtin_popcount(s);
  lp::SetFunction modular{g, card};
  for (uint16_t l : subsets_by_size(4, 2, 2)) {
    DoubledGround dg = doubled_ground(*g, l);
    lp::SetFunction r2 = lp::modular_combination(modular, dg);
    CHECK(lp::check_supermodular(r2));
  }
}

TEST_CASE("the LP refuses oversized ground sets") {
  GroundPtr big = GroundSet::alphabetic(9);
  Bitset zero(big->sta_size());
  CHECK_THROWS_AS(lp::supermodular_feasible(*big, zero, 0), CapError);
}

TEST_SUITE_END();
