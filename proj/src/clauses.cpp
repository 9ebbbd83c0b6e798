// SPDX-License-Identifier: MIT

#include "cistruct/clauses.hpp"

#include <algorithm>
#include <set>

namespace cistruct {

void ClauseSet::add(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end(),
            [](int a, int b) { return std::abs(a) != std::abs(b)
                                          ? std::abs(a) < std::abs(b)
                                          : a < b; });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t k = 1; k < lits.size(); ++k)
    if (lits[k - 1] == -lits[k]) return;  // tautology
  if (!seen_.insert(lits).second) return;
  clauses.push_back(std::move(lits));
}

bool ClauseSet::satisfied_by(const Bitset& bits) const {
  for (const std::vector<int>& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      if (lit > 0 ? bits.test(lit - 1) : !bits.test(-lit - 1)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

// Emits the four clauses of the equivalence ij|K & il|jK <=> il|K & ij|lK
// for every instance (i, {j,l}, K), plus the requested extras.
enum ExtraRules { kNone = 0, kIntersection = 1, kComposition = 2 };

ClauseSet exchange_family_clauses(int n, int extras) {
  GroundPtr g = GroundSet::alphabetic(n);
  ClauseSet cs;
  cs.num_vars = g->sta_size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int l = j + 1; l < n; ++l) {
        if (l == i) continue;
        uint16_t rest =
            uint16_t(g->full_mask() & ~(1u << i) & ~(1u << j) & ~(1u << l));
        for (uint16_t cond : submasks_of(rest)) {
          int a = 1 + g->statement_index(i, j, cond);
          int b = 1 + g->statement_index(i, l, uint16_t(cond | (1u << j)));
          int c = 1 + g->statement_index(i, l, cond);
          int d = 1 + g->statement_index(i, j, uint16_t(cond | (1u << l)));
          cs.add({-a, -b, c});
          cs.add({-a, -b, d});
          cs.add({-c, -d, a});
          cs.add({-c, -d, b});
          if (extras & kIntersection) {
            cs.add({-d, -b, a});
            cs.add({-d, -b, c});
          }
          if (extras & kComposition) {
            cs.add({-a, -c, d});
            cs.add({-a, -c, b});
          }
        }
      }
    }
  }
  return cs;
}

}  // namespace

ClauseSet semigraphoid_clauses(int n) {
  return exchange_family_clauses(n, kNone);
}

ClauseSet graphoid_clauses(int n) {
  return exchange_family_clauses(n, kIntersection);
}

ClauseSet comp_semigraphoid_clauses(int n) {
  return exchange_family_clauses(n, kComposition);
}

ClauseSet comp_graphoid_clauses(int n) {
  return exchange_family_clauses(n, kIntersection | kComposition);
}

ClauseSet structural_clauses_n4(int n) {
  if (n != 4)
    throw InvalidArgument(
        "structural models have a clause axiomatization only for 4 "
        "variables");
  GroundPtr g = GroundSet::alphabetic(4);
  std::vector<Implication> impls =
      instantiate_schemas(*g, semigraphoid_basis_schemas());
  std::vector<Implication> exch =
      instantiate_schemas(*g, exchange_rule_schemas());
  impls.insert(impls.end(), exch.begin(), exch.end());
  return clauses_from_implications(*g, impls, /*with_symmetry=*/false);
}

ClauseSet frame_clauses(Frame f, int n) {
  switch (f) {
    case Frame::Semigraphoid: return semigraphoid_clauses(n);
    case Frame::Graphoid: return graphoid_clauses(n);
    case Frame::CompSemigraphoid: return comp_semigraphoid_clauses(n);
    case Frame::CompGraphoid: return comp_graphoid_clauses(n);
    case Frame::Structural: return structural_clauses_n4(n);
  }
  throw InvalidArgument("unknown frame");
}

ClauseSet clauses_from_implications(const GroundSet& g,
                                    const std::vector<Implication>& impls,
                                    bool with_symmetry) {
  ClauseSet cs;
  cs.num_vars = g.sta_size();
  auto emit = [&](const Implication& imp) {
    std::vector<int> base;
    imp.antecedent.for_each_set([&](int k) { base.push_back(-(k + 1)); });
    imp.consequent.for_each_set([&](int c) {
      std::vector<int> clause = base;
      clause.push_back(c + 1);
      cs.add(std::move(clause));
    });
  };
  if (!with_symmetry) {
    for (const Implication& imp : impls) emit(imp);
    return cs;
  }
  for (const std::vector<uint8_t>& perm : all_permutations(g.size())) {
    std::vector<int> map = statement_permutation(g, perm);
    for (const Implication& imp : impls) {
      Implication img{Bitset(g.sta_size()), Bitset(g.sta_size())};
      imp.antecedent.for_each_set([&](int k) { img.antecedent.set(map[k]); });
      imp.consequent.for_each_set([&](int k) { img.consequent.set(map[k]); });
      emit(img);
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Rule schemas.  Placeholders: 0=i, 1=j, 2=k, 3=l; condition masks are over
// placeholder bits (bit p set means placeholder p conditions the statement).
// ---------------------------------------------------------------------------

namespace {
constexpr uint8_t I = 1, J = 2, K = 4, L = 8;
using S = RuleSchema::Stmt;
}  // namespace

const std::vector<RuleSchema>& semigraphoid_basis_schemas() {
  static const std::vector<RuleSchema> schemas = {
      {"exchange-0",
       {S{0, 1, 0}, S{0, 3, J}},
       {S{0, 3, 0}, S{0, 1, L}}},
      {"exchange-1",
       {S{0, 1, K}, S{0, 3, uint8_t(J | K)}},
       {S{0, 3, K}, S{0, 1, uint8_t(K | L)}}},
  };
  return schemas;
}

const std::vector<RuleSchema>& exchange_rule_schemas() {
  static const std::vector<RuleSchema> schemas = {
      {"E:1",
       {S{0, 1, K}, S{0, 2, L}, S{0, 3, J}},
       {S{0, 1, L}, S{0, 2, J}, S{0, 3, K}}},
      {"E:2",
       {S{0, 1, K}, S{0, 3, J}, S{1, 2, L}, S{2, 3, I}},
       {S{0, 1, L}, S{0, 3, K}, S{1, 2, I}, S{2, 3, J}}},
      {"E:3",
       {S{0, 1, uint8_t(K | L)}, S{0, 2, 0}, S{1, 3, 0},
        S{2, 3, uint8_t(I | J)}},
       {S{0, 1, 0}, S{0, 2, uint8_t(J | L)}, S{1, 3, uint8_t(I | K)},
        S{2, 3, 0}}},
      {"E:4",
       {S{0, 1, 0}, S{0, 1, uint8_t(K | L)}, S{2, 3, I}, S{2, 3, J}},
       {S{0, 1, K}, S{0, 1, L}, S{2, 3, 0}, S{2, 3, uint8_t(I | J)}}},
      {"E:5",
       {S{0, 1, K}, S{1, 2, uint8_t(I | L)}, S{0, 3, J}, S{2, 3, 0}},
       {S{0, 1, uint8_t(K | L)}, S{1, 2, I}, S{0, 3, 0}, S{2, 3, J}}},
  };
  return schemas;
}

const std::vector<RuleSchema>& selfadhesive_rule_schemas() {
  static const std::vector<RuleSchema> schemas = {
      {"SE:1",
       {S{0, 1, K}, S{0, 2, L}, S{1, 2, I}, S{0, 3, J}},
       {S{0, 1, L}, S{0, 2, J}, S{0, 3, K}}},
      {"SE:2",
       {S{0, 1, K}, S{0, 1, uint8_t(K | L)}, S{0, 2, J}, S{1, 2, I},
        S{1, 2, uint8_t(I | L)}, S{0, 3, 0}, S{0, 3, J}, S{2, 3, 0}},
       {S{2, 3, J}}},
      {"SI:1",
       {S{0, 1, K}, S{0, 2, J}, S{1, 2, I}, S{1, 2, L}, S{0, 3, J}},
       {S{0, 1, L}}},
      {"SI:2",
       {S{0, 1, K}, S{0, 2, J}, S{1, 2, I}, S{1, 2, uint8_t(I | L)},
        S{0, 3, J}},
       {S{0, 1, uint8_t(K | L)}}},
      {"SI:3",
       {S{0, 1, K}, S{0, 2, J}, S{1, 2, I}, S{0, 3, J}, S{2, 3, 0}},
       {S{0, 3, 0}}},
      {"SI:4",
       {S{0, 1, K}, S{0, 2, J}, S{1, 2, I}, S{0, 3, J}, S{2, 3, I}},
       {S{0, 3, K}}},
      {"SI:5",
       {S{0, 1, K}, S{0, 1, L}, S{0, 2, J}, S{1, 2, I}, S{2, 3, 0}},
       {S{0, 1, 0}, S{0, 2, 0}, S{1, 2, 0}}},
  };
  return schemas;
}

Implication instantiate_schema(const GroundSet& g, const RuleSchema& schema,
                               const std::vector<uint8_t>& vars) {
  auto idx = [&](const RuleSchema::Stmt& s) {
    int a = vars[s.a], b = vars[s.b];
    uint16_t cond = 0;
    for (int p = 0; p < 4; ++p)
      if (s.cond & (1u << p)) cond |= uint16_t(1) << vars[p];
    if (a > b) std::swap(a, b);
    return g.statement_index(a, b, cond);
  };
  Implication imp{Bitset(g.sta_size()), Bitset(g.sta_size())};
  for (const auto& s : schema.antecedents) imp.antecedent.set(idx(s));
  for (const auto& s : schema.consequents) imp.consequent.set(idx(s));
  return imp;
}

std::vector<Implication> instantiate_schemas(
    const GroundSet& g, const std::vector<RuleSchema>& schemas) {
  std::vector<Implication> out;
  std::set<std::pair<Bitset, Bitset>> seen;
  for (const RuleSchema& schema : schemas) {
    // Placeholders actually used by the schema.
    uint8_t used = 0;
    auto mark = [&](const RuleSchema::Stmt& s) {
      used |= uint8_t((1u << s.a) | (1u << s.b) | s.cond);
    };
    for (const auto& s : schema.antecedents) mark(s);
    for (const auto& s : schema.consequents) mark(s);
    std::vector<int> slots;
    for (int p = 0; p < 4; ++p)
      if (used & (1u << p)) slots.push_back(p);
    if (int(slots.size()) > g.size()) continue;

    std::vector<uint8_t> vars(4, 0);
    std::vector<bool> taken(g.size(), false);
    auto rec = [&](auto&& self, size_t depth) -> void {
      if (depth == slots.size()) {
        Implication imp = instantiate_schema(g, schema, vars);
        if (seen.emplace(imp.antecedent, imp.consequent).second)
          out.push_back(std::move(imp));
        return;
      }
      for (int v = 0; v < g.size(); ++v) {
        if (taken[v]) continue;
        taken[v] = true;
        vars[slots[depth]] = uint8_t(v);
        self(self, depth + 1);
        taken[v] = false;
      }
    };
    rec(rec, 0);
  }
  return out;
}

}  // namespace cistruct
