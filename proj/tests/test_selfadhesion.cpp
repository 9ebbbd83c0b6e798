// Self-adhesion: gluing closures, the L-cycle, policies, k-fold and doubled
// variants, and the structural certificate/LP screening path.
#include "cistruct/closure.hpp"
#include "cistruct/io.hpp"
#include "cistruct/lp.hpp"
#include "cistruct/selfadhesion.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cistruct;
using namespace testutil;

TEST_SUITE_BEGIN("selfadhesion");

namespace {

uint16_t mask_of(const GroundSet& g, std::initializer_list<const char*> ls) {
  uint16_t m = 0;
  for (const char* l : ls) m |= uint16_t(1u << g.index_of(l));
  return m;
}

// The ten-statement walkthrough model: a coatom whose only adhesive
// two-element overlap is {c, d}.
Model walkthrough_model() {
  return mk(
      "ground: a b c d\n"
      "a b | c\na b | d\na b | c d\na c | b\na d | b\n"
      "b c | a\nb d | a\nc d |\nc d | a\nc d | b\n");
}

}  // namespace

TEST_CASE("the gluing closure of ab|c along {b,c} returns ab|c") {
  SaContext ctx(Frame::Semigraphoid);
  Model m = mk("ground: a b c\na b | c\n");
  uint16_t bc = mask_of(*m.ground(), {"b", "c"});
  CHECK(sa_closure_at(ctx, m, bc) == m);
  // The model is self-adhesive outright (checked at every overlap size).
  CHECK(is_self_adhesive(ctx, m, SaPolicy::Full));
}

TEST_CASE("every three-variable semigraphoid is self-adhesive") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 3);
  REQUIRE(family.size() == 22);
  for (const Bitset& b : family) {
    Model m(g, b);
    CHECK(is_self_adhesive(ctx, m, SaPolicy::Full));
  }
}

TEST_CASE("no undirected graph glues bc|a to its mirrored copy") {
  // The separation model {bc|a} of the path b - a - c is self-adhesive as a
  // semigraphoid, but relative to graph separation models it is not: an
  // adhesion along {b, c} would need a graph over {a, b, c, d} (d mirroring
  // a) whose model contains bc|a, bc|d, ad|bc and avoids ab|c, ac|b, bd|c,
  // cd|b.  No such graph exists.
  GroundPtr g = GroundSet::alphabetic(4);
  std::vector<std::pair<int, int>> all_edges;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) all_edges.push_back({u, v});
  Model required = mk("ground: a b c d\nb c | a\nb c | d\na d | b c\n");
  Model forbidden = mk("ground: a b c d\na b | c\na c | b\nb d | c\nc d | b\n");
  int good = 0;
  for (uint32_t pick = 0; pick < 64; ++pick) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < 6; ++e)
      if (pick & (1u << e)) edges.push_back(all_edges[e]);
    Model sep = graph_separation_model(g, edges);
    if (required.bits().is_subset_of(sep.bits()) &&
        !sep.bits().intersects(forbidden.bits()))
      ++good;
  }
  CHECK(good == 0);
  // The semigraphoid gluing, in contrast, succeeds.
  SaContext ctx(Frame::Semigraphoid);
  Model m = mk("ground: a b c\nb c | a\n");
  CHECK(is_self_adhesive(ctx, m, SaPolicy::Full));
}

TEST_CASE("the walkthrough model is adhesive only at the overlap cd") {
  SaContext ctx(Frame::Semigraphoid);
  Model m = walkthrough_model();
  const GroundSet& g = *m.ground();
  CHECK(frame_member(Frame::Semigraphoid, m));
  uint16_t cd = mask_of(g, {"c", "d"});
  uint16_t bd = mask_of(g, {"b", "d"});
  for (uint16_t l : subsets_by_size(4, 2, 2)) {
    Model glued = sa_closure_at(ctx, m, l);
    CHECK(m.bits().is_subset_of(glued.bits()));
    CHECK((glued == m) == (l == cd));
  }
  // At {b, d} the gluing forces the marginal independence bc|.
  Model at_bd = sa_closure_at(ctx, m, bd);
  CHECK(stmt_texts(at_bd).count("b c |") == 1);
  // The violation witness is the first overlap in size-then-lex order.
  uint16_t witness = 0;
  CHECK(!is_self_adhesive(ctx, m, SaPolicy::Default, &witness));
  CHECK(witness == mask_of(g, {"a", "b"}));
  // Even a five-statement submodel already forces bc| at {b, d}.
  Model sub = mk("ground: a b c d\na b | d\na d | b\nb c | a\nb d | a\nc d |\n");
  Model sub_bd = sa_closure_at(ctx, sub, bd);
  CHECK(stmt_texts(sub_bd).count("b c |") == 1);
}

TEST_CASE("a self-adhesive semigraphoid whose dual is not") {
  SaContext ctx(Frame::Semigraphoid);
  Model m = mk("ground: a b c d\na b | c\na c | d\na d | b\nb c | d\n");
  CHECK(frame_member(Frame::Semigraphoid, m));
  CHECK(is_self_adhesive(ctx, m));
  Model d = dual(m);
  CHECK(stmt_texts(d) == texts({"a b | d", "a c | b", "a d | c", "b c | a"}));
  CHECK(frame_member(Frame::Semigraphoid, d));
  CHECK(!is_self_adhesive(ctx, d));
  // The gluing forces the three remaining exchange statements.
  Model closed = sa_closure(ctx, d);
  for (const char* s : {"a c | d", "a b | c", "a d | b"})
    CHECK(stmt_texts(closed).count(s) == 1);
}

TEST_CASE("a self-adhesive structural model whose dual is not") {
  SaContext ctx(Frame::Structural);
  SaContext aux(Frame::Semigraphoid);
  Model m = mk("ground: a b c d\na b | d\na c | d\na d | b\nb c |\nb c | d\n");
  CHECK(frame_member(Frame::Structural, m));
  CHECK(selfadhesive_verdict(ctx, &aux, m));
  Model d = dual(m);
  CHECK(stmt_texts(d) ==
        texts({"a b | c", "a c | b", "a d | c", "b c | a", "b c | a d"}));
  CHECK(frame_member(Frame::Structural, d));
  uint16_t witness = 0;
  CHECK(!selfadhesive_verdict(ctx, &aux, d, SaPolicy::Default, &witness));
  CHECK(witness != 0);
  // The doubled LP closure derives the composition consequent ac|bd.
  Model closed = sa_closure(ctx, d);
  CHECK(stmt_texts(closed).count("a c | b d") == 1);
}

TEST_CASE("reduced and full policies agree for semigraphoids") {
  SaContext ctx(Frame::Semigraphoid);
  CHECK(ctx.resolve_policy(SaPolicy::Default) == SaPolicy::Reduced);
  GroundPtr g = GroundSet::alphabetic(4);
  for (int k = 0; k < 8; ++k) {
    Model m = random_model(g, 1, 7);
    Model reduced = sa_closure(ctx, m, SaPolicy::Reduced);
    Model full = sa_closure(ctx, m, SaPolicy::Full);
    CHECK(reduced == full);
  }
  SaContext gra(Frame::Graphoid);
  CHECK(gra.resolve_policy(SaPolicy::Default) == SaPolicy::Full);
}

TEST_CASE("restart-on-change and full-sweep iterations reach the same fixpoint") {
  SaContext restart(Frame::Semigraphoid);
  EngineOptions sweep_opts;
  sweep_opts.sa_iteration = SaIteration::FullSweep;
  SaContext sweep(Frame::Semigraphoid, sweep_opts);
  GroundPtr g = GroundSet::alphabetic(4);
  for (int k = 0; k < 6; ++k) {
    Model m = random_model(g, 1, 7);
    CHECK(sa_closure(restart, m) == sa_closure(sweep, m));
  }
}

TEST_CASE("self-adhesive closures are closure operators") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g = GroundSet::alphabetic(4);
  for (int k = 0; k < 5; ++k) {
    Model m = random_model(g, 1, 7);
    Model c = sa_closure(ctx, m);
    CHECK(m.bits().is_subset_of(c.bits()));
    CHECK(frame_member(Frame::Semigraphoid, c));
    CHECK(sa_closure(ctx, c) == c);
    CHECK(is_self_adhesive(ctx, c));
  }
}

TEST_CASE("one-fold gluing coincides with the doubled gluing") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g3 = GroundSet::alphabetic(3);
  GroundPtr g4 = GroundSet::alphabetic(4);
  for (int k = 0; k < 6; ++k) {
    Model m3 = random_model(g3, 1, 3);
    for (uint16_t l : subsets_by_size(3, 2, 2))
      CHECK(kfold_closure_at(ctx, m3, l, 1) == sa_closure_at(ctx, m3, l));
    Model m4 = random_model(g4, 1, 6);
    uint16_t l4 = 0b0110;
    CHECK(kfold_closure_at(ctx, m4, l4, 1) == sa_closure_at(ctx, m4, l4));
  }
}

TEST_CASE("more copies force at least as much") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g3 = GroundSet::alphabetic(3);
  for (int k = 0; k < 8; ++k) {
    Model m = random_model(g3, 1, 2);
    for (uint16_t l : subsets_by_size(3, 2, 2)) {
      Model one = kfold_closure_at(ctx, m, l, 1);
      Model two = kfold_closure_at(ctx, m, l, 2);
      Model three = kfold_closure_at(ctx, m, l, 3);
      CHECK(one.bits().is_subset_of(two.bits()));
      CHECK(two.bits().is_subset_of(three.bits()));
    }
  }
  // The ground-size cap trips cleanly.
  GroundPtr g4 = GroundSet::alphabetic(4);
  Model m4(g4);
  CHECK_THROWS_AS(kfold_closure_at(ctx, m4, 0, 3), CapError);
}

TEST_CASE("every three-variable semigraphoid is doubly self-adhesive") {
  // Probabilistic representability of all three-variable semigraphoids
  // makes the doubled self-adhesion cycle a no-op over this family.
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 3);
  for (const Bitset& b : family) {
    Model m(g, b);
    CHECK(is_doubly_self_adhesive(ctx, m));
    CHECK(sa2_closure(ctx, m) == m);
  }
}

TEST_CASE("doubled closures dominate single closures") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr g = GroundSet::alphabetic(3);
  for (int k = 0; k < 4; ++k) {
    Model m = random_model(g, 1, 2);
    Model single = sa_closure(ctx, m);
    Model twice = sa2_closure(ctx, m);
    CHECK(single.bits().is_subset_of(twice.bits()));
    CHECK(sa2_closure(ctx, twice) == twice);
  }
}

TEST_CASE("certificates and the LP fallback agree with the gluing closure") {
  GroundPtr g = GroundSet::alphabetic(4);
  SaContext ctx(Frame::Structural);
  Model fix = mk("ground: a b c d\na b |\na b | c\na b | d\nc d | a b\n");
  auto rep = lp::interior_representative(g, fix.bits());
  REQUIRE(rep.has_value());
  for (uint16_t l : subsets_by_size(4, 2, 2)) {
    bool fast = structural_sa_at(*rep, fix, l);
    Model glued = sa_closure_at(ctx, fix, l);
    CHECK(fast == (glued == fix));
  }
}

TEST_CASE("the screening verdict matches the direct definition") {
  SaContext ctx(Frame::Structural);
  SaContext aux(Frame::Semigraphoid);
  GroundPtr g = GroundSet::alphabetic(4);
  ClosureEngine strum(Frame::Structural, g);
  int disagreements = 0;
  for (int k = 0; k < 5; ++k) {
    Model m = strum.closure(random_model(g, 1, 8));
    bool fast = selfadhesive_verdict(ctx, &aux, m);
    bool direct = is_self_adhesive(ctx, m);
    if (fast != direct) ++disagreements;
  }
  CHECK(disagreements == 0);
  // The full model is trivially self-adhesive.
  Model full(g, Bitset(g->sta_size()).complement());
  CHECK(selfadhesive_verdict(ctx, &aux, full));
  // Non-structural input is rejected.
  Model semgr_only = mk("ground: a b c d\na b | c\na c | d\na d | b\nb c | d\n");
  CHECK_THROWS_AS(selfadhesive_verdict(ctx, &aux, semgr_only),
                  InvalidArgument);
}

TEST_CASE("contexts cache engines per ground size") {
  SaContext ctx(Frame::Semigraphoid);
  GroundPtr a = GroundSet::alphabetic(5);
  GroundPtr b = GroundSet::make({"p", "q", "r", "s", "t"});
  CHECK(&ctx.engine_for(a) == &ctx.engine_for(b));
  CHECK(ctx.engine_for(a).ground()->size() == 5);
}

TEST_SUITE_END();
