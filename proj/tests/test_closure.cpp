// Closure engines: SAT-backed frame closures against brute-force
// references, the LP backend for the structural frame, closure laws and
// ground-extension stability.
#include <map>

#include "cistruct/closure.hpp"
#include "cistruct/io.hpp"
#include "cistruct/sat.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cistruct;
using namespace testutil;

TEST_SUITE_BEGIN("closure");

namespace {

// All frame models over three variables by direct axiom filtering.
std::vector<Bitset> direct_family3(Frame f) {
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> out;
  for (uint32_t mask = 0; mask < 64; ++mask) {
    Bitset b(6);
    for (int t = 0; t < 6; ++t)
      if (mask & (1u << t)) b.set(t);
    if (frame_axioms_direct(f, *g, b)) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("SAT closures match the brute-force closure on all 3-variable sets") {
  GroundPtr g = GroundSet::alphabetic(3);
  for (Frame f : {Frame::Semigraphoid, Frame::Graphoid,
                  Frame::CompSemigraphoid, Frame::CompGraphoid}) {
    std::vector<Bitset> family = direct_family3(f);
    ClosureEngine eng(f, g);
    CHECK(eng.effective_backend() == Backend::Sat);
    for (uint32_t mask = 0; mask < 64; ++mask) {
      Bitset b(6);
      for (int t = 0; t < 6; ++t)
        if (mask & (1u << t)) b.set(t);
      Model closed = eng.closure(Model(g, b));
      CHECK(closed.bits() == brute_closure(family, b));
    }
  }
}

TEST_CASE("the structural frame at three variables closes like the semigraphoid") {
  // With three variables every semigraphoid is structural, so the exact-LP
  // closure must coincide with the semigraphoid brute-force closure.
  GroundPtr g = GroundSet::alphabetic(3);
  std::vector<Bitset> family = direct_family3(Frame::Semigraphoid);
  ClosureEngine eng(Frame::Structural, g);
  CHECK(eng.effective_backend() == Backend::Lp);
  for (uint32_t mask = 0; mask < 64; ++mask) {
    Bitset b(6);
    for (int t = 0; t < 6; ++t)
      if (mask & (1u << t)) b.set(t);
    CHECK(eng.closure(Model(g, b)).bits() == brute_closure(family, b));
  }
}

TEST_CASE("SAT closures match the enumerated family on random 4-variable sets") {
  GroundPtr g = GroundSet::alphabetic(4);
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 4);
  ClosureEngine eng(Frame::Semigraphoid, g);
  for (int k = 0; k < 200; ++k) {
    Bitset b = random_bits(*g, 1, 5);
    CHECK(eng.closure(Model(g, b)).bits() == brute_closure(family, b));
  }
}

TEST_CASE("LP and SAT agree on the structural closure at four variables") {
  GroundPtr g = GroundSet::alphabetic(4);
  EngineOptions lp_opts;
  lp_opts.backend = Backend::Lp;
  EngineOptions sat_opts;
  sat_opts.backend = Backend::Sat;
  ClosureEngine lp_eng(Frame::Structural, g, lp_opts);
  ClosureEngine sat_eng(Frame::Structural, g, sat_opts);
  CHECK(lp_eng.effective_backend() == Backend::Lp);
  CHECK(sat_eng.effective_backend() == Backend::Sat);
  for (int k = 0; k < 60; ++k) {
    Bitset b = random_bits(*g, 1, 6);
    Model m(g, b);
    CHECK(lp_eng.closure(m) == sat_eng.closure(m));
    CHECK(lp_eng.is_member(m) == sat_eng.is_member(m));
  }
}

TEST_CASE("closure laws: extensive, isotone, idempotent") {
  for (Frame f : {Frame::Semigraphoid, Frame::Graphoid,
                  Frame::CompSemigraphoid, Frame::CompGraphoid,
                  Frame::Structural}) {
    GroundPtr g = GroundSet::alphabetic(4);
    ClosureEngine eng(f, g);
    for (int k = 0; k < 12; ++k) {
      Model m = random_model(g, 1, 6);
      Model c = eng.closure(m);
      CHECK(m.bits().is_subset_of(c.bits()));       // extensive
      CHECK(eng.closure(c) == c);                   // idempotent
      Model bigger = m;
      Bitset extra = random_bits(*g, 1, 8);
      bigger.bits() |= extra;
      Model cb = eng.closure(bigger);
      CHECK(c.bits().is_subset_of(cb.bits()));      // isotone
      CHECK(eng.is_member(c));
      CHECK(eng.is_member(m) == (c == m));
    }
  }
}

TEST_CASE("closures are stable under ground-set extension") {
  // Closing over a larger ground set adds nothing for statements whose
  // variables stay inside the original ground set.
  GroundPtr g3 = GroundSet::alphabetic(3);
  GroundPtr g4 = GroundSet::alphabetic(4);
  GroundPtr g5 = GroundSet::alphabetic(5);
  ClosureEngine e3(Frame::Semigraphoid, g3);
  ClosureEngine e4(Frame::Semigraphoid, g4);
  ClosureEngine e5(Frame::Semigraphoid, g5);
  for (int k = 0; k < 25; ++k) {
    Model m3 = random_model(g3, 1, 3);
    Model inside4 = ascetic_extend(m3, g4, {0, 1, 2});
    CHECK(marginal(e4.closure(inside4), 0b0111) == e3.closure(m3));
    Model m4 = random_model(g4, 1, 5);
    Model inside5 = ascetic_extend(m4, g5, {0, 1, 2, 3});
    CHECK(marginal(e5.closure(inside5), 0b01111) == e4.closure(m4));
  }
}

TEST_CASE("check_implication distinguishes frame strengths") {
  GroundPtr g = GroundSet::alphabetic(4);
  ImplicationFile f = parse_implications(
      "ground: a b c d\n"
      // the basis exchange rule, valid in every frame here
      "a b | ; a c | b => a c | ; a b | c\n"
      // the first exchange rule: structural only
      "a b | c ; a c | d ; a d | b => a b | d ; a c | b ; a d | c\n"
      // composition: valid for the composition frames only
      "a b | ; a c | => a b | c ; a c | b\n");
  ClosureEngine semgr(Frame::Semigraphoid, g);
  ClosureEngine strum(Frame::Structural, g);
  ClosureEngine comp(Frame::CompSemigraphoid, g);
  CHECK(semgr.check_implication(f.implications[0]));
  CHECK(strum.check_implication(f.implications[0]));
  CHECK(comp.check_implication(f.implications[0]));
  CHECK(!semgr.check_implication(f.implications[1]));
  CHECK(strum.check_implication(f.implications[1]));
  CHECK(!semgr.check_implication(f.implications[2]));
  CHECK(comp.check_implication(f.implications[2]));
}

TEST_CASE("closure of the glued walkthrough fixture") {
  // Gluing ab|c with a copy of itself along {b,c} (the copy of a named d)
  // starts from {ab|c, db|c, ad|bc}; its semigraphoid closure is the
  // six-statement model below, whose restriction to {a,b,c} is ab|c again.
  Model glue = mk("ground: a b c d\na b | c\nb d | c\na d | b c\n");
  Model closed = frame_closure(Frame::Semigraphoid, glue);
  CHECK(stmt_texts(closed) == texts({"a b | c", "a b | c d", "a d | c",
                                     "a d | b c", "b d | c", "b d | a c"}));
  CHECK(stmt_texts(marginal(closed, 0b0111)) == texts({"a b | c"}));
}

TEST_CASE("frame enumeration at three variables") {
  std::vector<Bitset> family = enumerate_frame(Frame::Semigraphoid, 3);
  CHECK(family.size() == 22);
  CHECK(family == direct_family3(Frame::Semigraphoid));
  // Deterministic output, ordered by cardinality.
  CHECK(enumerate_frame(Frame::Semigraphoid, 3) == family);
  for (size_t k = 1; k < family.size(); ++k)
    CHECK(family[k - 1].count() <= family[k].count());
  for (Frame f : {Frame::Graphoid, Frame::CompSemigraphoid,
                  Frame::CompGraphoid})
    CHECK(enumerate_frame(f, 3) == direct_family3(f));
}

TEST_CASE("per-candidate transcripts") {
  GroundPtr g = GroundSet::alphabetic(3);
  ClosureEngine eng(Frame::Semigraphoid, g);
  std::map<int, bool> seen;
  eng.set_transcript([&](int t, bool in) { seen[t] = in; });
  Model m = mk("ground: a b c\na b |\na c | b\n");
  Model closed = eng.closure(m);
  CHECK(seen.size() == 6);  // one report per candidate statement
  for (const auto& [t, in] : seen)
    CHECK(in == closed.bits().test(t));
}

TEST_CASE("single-shot convenience wrappers") {
  Model m = mk("ground: a b c\na b |\na c | b\n");
  Model closed = frame_closure(Frame::Semigraphoid, m);
  CHECK(stmt_texts(closed) == texts({"a b |", "a b | c", "a c |", "a c | b"}));
  CHECK(frame_member(Frame::Semigraphoid, closed));
  CHECK(!frame_member(Frame::Semigraphoid, m));
  CHECK(frame_member(Frame::Graphoid, closed));
}

TEST_CASE("mismatched ground sizes are rejected") {
  GroundPtr g4 = GroundSet::alphabetic(4);
  ClosureEngine eng(Frame::Semigraphoid, g4);
  Model m3 = mk("ground: a b c\na b |\n");
  CHECK_THROWS_AS(eng.closure(m3), InvalidArgument);
  CHECK_THROWS_AS(eng.is_member(m3), InvalidArgument);
}

TEST_SUITE_END();
