// SPDX-License-Identifier: MIT
//
// Membership in the structural closure is decided through the supermodular
// cone: a statement t lies in the closure of a set Xi iff -u_t is a
// nonnegative combination of the difference functionals u_s (s outside Xi)
// plus an arbitrary combination of those in Xi, where u_s is the incidence
// vector of D_m(s) over P(N).  The query is a pure feasibility LP with 2^n
// rows, solved by an exact phase-I simplex.  A feasible outcome carries the
// combination itself; an infeasible outcome carries a Farkas vector which,
// read as a set function, is a supermodular witness separating t from the
// closure.  Both certificates are re-verified in exact arithmetic.

#include "cistruct/lp.hpp"

#include <algorithm>
#include <utility>

namespace cistruct::lp {

Rational delta(const SetFunction& m, const Statement& s) {
  uint16_t bi = uint16_t(1) << s.i, bj = uint16_t(1) << s.j;
  return m.at(uint16_t(s.cond | bi | bj)) + m.at(s.cond) -
         m.at(uint16_t(s.cond | bi)) - m.at(uint16_t(s.cond | bj));
}

bool check_supermodular(const SetFunction& m, Statement* violation) {
  const GroundSet& g = *m.ground;
  if (m.values.size() != size_t(1) << g.size())
    throw InvalidArgument("set function has the wrong number of values");
  for (int k = 0; k < g.sta_size(); ++k) {
    Statement s = g.statement_at(k);
    if (delta(m, s) < 0) {
      if (violation) *violation = s;
      return false;
    }
  }
  return true;
}

Model induced_model(const SetFunction& m) {
  Statement bad;
  if (!check_supermodular(m, &bad))
    throw InvalidArgument("set function is not supermodular at " +
                          m.ground->statement_text(bad));
  Model out(m.ground);
  for (int k = 0; k < m.ground->sta_size(); ++k)
    if (delta(m, m.ground->statement_at(k)) == 0) out.bits().set(k);
  return out;
}

SetFunction standardize(const SetFunction& m) {
  const GroundSet& g = *m.ground;
  if (m.values.size() != size_t(1) << g.size())
    throw InvalidArgument("set function has the wrong number of values");
  SetFunction out{m.ground, m.values};
  const Rational& base = m.values[0];
  for (uint16_t mask = 0; mask < (1u << g.size()); ++mask) {
    Rational adj = base;
    for (int v = 0; v < g.size(); ++v)
      if (mask & (1u << v)) adj += m.values[uint16_t(1) << v] - base;
    out.values[mask] -= adj;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact phase-I simplex:  find x >= 0 with A x = b.
// ---------------------------------------------------------------------------

namespace {

struct SparseCol {
  std::vector<std::pair<int, int>> entries;  // (row, coefficient)
};

struct PhaseOneResult {
  bool feasible;
  std::vector<Rational> x;  // per structural column, when feasible
  std::vector<Rational> y;  // Farkas vector per row, when infeasible:
                            // y . A_j <= 0 for every column, y . b > 0
};

PhaseOneResult phase_one(int rows, const std::vector<SparseCol>& cols,
                         const std::vector<Rational>& b_in) {
  const int n = int(cols.size());
  const int art0 = n;            // artificial columns n .. n+rows-1
  const int rhs = n + rows;      // right-hand-side column
  const int width = rhs + 1;

  // Tableau rows 0..rows-1 plus the reduced-cost row at index `rows`.
  std::vector<std::vector<Rational>> t(rows + 1,
                                       std::vector<Rational>(width, 0));
  std::vector<char> flipped(rows, 0);
  for (int r = 0; r < rows; ++r)
    if (b_in[r] < 0) flipped[r] = 1;
  for (int j = 0; j < n; ++j)
    for (auto [r, coef] : cols[j].entries)
      t[r][j] = flipped[r] ? -coef : coef;
  for (int r = 0; r < rows; ++r) {
    t[r][art0 + r] = 1;
    t[r][rhs] = flipped[r] ? -b_in[r] : b_in[r];
  }
  // Reduced costs with the all-artificial basis (prices y = 1):
  // structural j: -sum_r a_rj; artificial: 0; rhs: -sum_r b_r.
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < rows; ++r) t[rows][j] -= t[r][j];
  for (int r = 0; r < rows; ++r) t[rows][rhs] -= t[r][rhs];

  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) basis[r] = art0 + r;

  // Dantzig pricing at first, permanently switching to Bland's rule after a
  // fixed number of pivots so that termination is guaranteed.
  const long kBlandSwitch = 4000;
  const long kMaxPivots = 4'000'000;
  for (long iter = 0;; ++iter) {
    if (iter > kMaxPivots)
      throw BackendError("simplex did not terminate");
    bool bland = iter >= kBlandSwitch;
    int enter = -1;
    for (int j = 0; j < n; ++j) {  // artificials never re-enter
      if (t[rows][j] >= 0) continue;
      if (enter == -1) {
        enter = j;
        if (bland) break;
      } else if (t[rows][j] < t[rows][enter]) {
        enter = j;
      }
    }
    if (enter == -1) break;  // optimal

    int leave = -1;
    Rational best;
    for (int r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][rhs] / t[r][enter];
      if (leave == -1 || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == -1)
      throw BackendError("phase-I objective is unbounded");  // cannot happen

    // Pivot on (leave, enter).
    Rational piv = t[leave][enter];
    for (int j = 0; j < width; ++j) t[leave][j] /= piv;
    for (int r = 0; r <= rows; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      Rational f = t[r][enter];
      for (int j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  PhaseOneResult out;
  Rational obj = -t[rows][rhs];
  out.feasible = (obj == 0);
  if (out.feasible) {
    out.x.assign(n, 0);
    for (int r = 0; r < rows; ++r)
      if (basis[r] < n) out.x[basis[r]] = t[r][rhs];
  } else {
    // Prices from the artificial columns: y_r = c_art - reduced cost.
    out.y.assign(rows, 0);
    for (int r = 0; r < rows; ++r) {
      Rational yr = Rational(1) - t[rows][art0 + r];
      out.y[r] = flipped[r] ? -yr : yr;
    }
  }
  return out;
}

// The incidence vector u_s of the supermodular difference D(s), as sparse
// (subset-mask, coefficient) entries.
std::vector<std::pair<int, int>> difference_entries(const Statement& s) {
  int bi = 1 << s.i, bj = 1 << s.j;
  return {{s.cond | bi | bj, 1},
          {s.cond, 1},
          {s.cond | bi, -1},
          {s.cond | bj, -1}};
}

void require_lp_ground(const GroundSet& g) {
  if (g.size() > kMaxLpGround)
    throw CapError("LP queries are limited to " +
                   std::to_string(kMaxLpGround) + " variables");
}

struct ConeOutcome {
  bool in_closure;
  std::optional<SetFunction> witness;  // present iff !in_closure
};

// Decides whether statement `target` lies in the structural closure of
// `zero_set`; an exact certificate backs either answer.
ConeOutcome cone_membership(const GroundPtr& g, const Bitset& zero_set,
                            int target) {
  require_lp_ground(*g);
  const int rows = 1 << g->size();
  const int sta = g->sta_size();

  std::vector<SparseCol> cols;
  std::vector<std::pair<int, int>> meaning;  // (statement, sign) per column
  cols.reserve(sta + zero_set.count());
  for (int s = 0; s < sta; ++s) {
    auto entries = difference_entries(g->statement_at(s));
    cols.push_back({entries});
    meaning.emplace_back(s, +1);
    if (zero_set.test(s)) {  // free multiplier: also allow the negative
      SparseCol negated;
      for (auto [r, c] : entries) negated.entries.emplace_back(r, -c);
      cols.push_back(std::move(negated));
      meaning.emplace_back(s, -1);
    }
  }
  std::vector<Rational> b(rows, 0);
  for (auto [r, c] : difference_entries(g->statement_at(target)))
    b[r] -= c;

  PhaseOneResult res = phase_one(rows, cols, b);

  ConeOutcome out;
  out.in_closure = res.feasible;
  if (res.feasible) {
    // Certificate: the combination must reproduce -u_target exactly.
    std::vector<Rational> sum(rows, 0);
    for (size_t j = 0; j < cols.size(); ++j)
      for (auto [r, c] : cols[j].entries) sum[r] += res.x[j] * c;
    for (int r = 0; r < rows; ++r)
      if (sum[r] != b[r])
        throw BackendError("cone-membership certificate failed to verify");
    return out;
  }

  // Farkas vector, read as a set function and negated, is a supermodular
  // witness: D = 0 on zero_set, D(target) > 0.
  SetFunction w{g, std::vector<Rational>(rows)};
  for (int r = 0; r < rows; ++r) w.values[r] = -res.y[r];
  w = standardize(w);
  Statement bad;
  if (!check_supermodular(w, &bad))
    throw BackendError("separating witness failed to verify");
  bool zeros_ok = true;
  zero_set.for_each_set([&](int s) {
    if (delta(w, g->statement_at(s)) != 0) zeros_ok = false;
  });
  if (!zeros_ok || delta(w, g->statement_at(target)) <= 0)
    throw BackendError("separating witness failed to verify");
  out.witness = std::move(w);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public queries
// ---------------------------------------------------------------------------

bool supermodular_feasible(const GroundSet& g, const Bitset& zero_set,
                           int target, const Rational& c) {
  if (c <= 0) throw InvalidArgument("the gap must be positive");
  require_lp_ground(g);
  if (target < 0 || target >= g.sta_size())
    throw InvalidArgument("target statement out of range");
  GroundPtr gp = GroundSet::make(g.labels());
  return !cone_membership(gp, zero_set, target).in_closure;
}

std::optional<SetFunction> supermodular_witness(const GroundPtr& g,
                                                const Bitset& zero_set,
                                                const Bitset& gap_targets,
                                                const Rational& c) {
  if (c <= 0) throw InvalidArgument("the gap must be positive");
  require_lp_ground(*g);
  SetFunction acc{g, std::vector<Rational>(size_t(1) << g->size(), 0)};
  Bitset remaining = gap_targets;
  while (remaining.any()) {
    int t = remaining.next_set_bit(0);
    ConeOutcome out = cone_membership(g, zero_set, t);
    if (out.in_closure) return std::nullopt;
    const SetFunction& w = *out.witness;
    // Normalize the gap at t to c, accumulate, and drop every target the
    // witness already separates.
    Rational scale = c / delta(w, g->statement_at(t));
    for (size_t k = 0; k < acc.values.size(); ++k)
      acc.values[k] += scale * w.values[k];
    std::vector<int> done;
    remaining.for_each_set([&](int s) {
      if (delta(w, g->statement_at(s)) > 0) done.push_back(s);
    });
    for (int s : done) remaining.reset(s);
  }
  // One final scaling so that every target reaches the gap c.
  Rational factor = 1;
  gap_targets.for_each_set([&](int s) {
    Rational d = delta(acc, g->statement_at(s));
    if (d <= 0) throw BackendError("accumulated witness failed to verify");
    if (c / d > factor) factor = c / d;
  });
  if (factor != 1)
    for (Rational& v : acc.values) v *= factor;
  Statement bad;
  if (!check_supermodular(acc, &bad))
    throw BackendError("accumulated witness failed to verify");
  bool zeros_ok = true;
  zero_set.for_each_set([&](int s) {
    if (delta(acc, g->statement_at(s)) != 0) zeros_ok = false;
  });
  if (!zeros_ok) throw BackendError("accumulated witness failed to verify");
  return acc;
}

Bitset structural_closure_subset(const GroundPtr& g, const Bitset& zero_set,
                                 const Bitset& candidates) {
  require_lp_ground(*g);
  Bitset in_cl(g->sta_size());
  Bitset undecided = candidates;
  // Premises are in their own closure.
  in_cl |= candidates & zero_set;
  undecided -= zero_set;
  while (undecided.any()) {
    int t = undecided.next_set_bit(0);
    ConeOutcome out = cone_membership(g, zero_set, t);
    if (out.in_closure) {
      in_cl.set(t);
      undecided.reset(t);
      continue;
    }
    // The witness excludes every candidate with a positive difference.
    std::vector<int> pruned;
    undecided.for_each_set([&](int s) {
      if (delta(*out.witness, g->statement_at(s)) > 0) pruned.push_back(s);
    });
    for (int s : pruned) undecided.reset(s);
  }
  return in_cl;
}

std::optional<SetFunction> interior_representative(const GroundPtr& g,
                                                   const Bitset& m) {
  require_lp_ground(*g);
  SetFunction acc{g, std::vector<Rational>(size_t(1) << g->size(), 0)};
  bool separated_any = false;
  Bitset undecided = m.complement();
  while (undecided.any()) {
    int t = undecided.next_set_bit(0);
    ConeOutcome out = cone_membership(g, m, t);
    if (out.in_closure) {
      undecided.reset(t);
      continue;
    }
    separated_any = true;
    for (size_t k = 0; k < acc.values.size(); ++k)
      acc.values[k] += out.witness->values[k];
    std::vector<int> pruned;
    undecided.for_each_set([&](int s) {
      if (delta(*out.witness, g->statement_at(s)) > 0) pruned.push_back(s);
    });
    for (int s : pruned) undecided.reset(s);
  }
  if (!separated_any) return std::nullopt;  // the closure is everything
  Statement bad;
  if (!check_supermodular(acc, &bad))
    throw BackendError("interior representative failed to verify");
  return acc;
}

SetFunction modular_combination(const SetFunction& r, const DoubledGround& dg) {
  const GroundSet& g = *r.ground;
  if (int(dg.embed_n.size()) != g.size())
    throw InvalidArgument("doubled ground does not match the set function");
  if (r.values.size() != size_t(1) << g.size())
    throw InvalidArgument("set function has the wrong number of values");
  const int big_n = dg.big->size();
  SetFunction out{dg.big, std::vector<Rational>(size_t(1) << big_n)};
  for (uint32_t s = 0; s < (uint32_t(1) << big_n); ++s) {
    uint16_t sn = uint16_t(s & dg.n_mask_big);
    uint16_t sl = uint16_t(s & dg.l_mask_big);
    uint16_t phi_inv = 0;
    for (int v = 0; v < g.size(); ++v)
      if (s & (1u << dg.bijection[v])) phi_inv |= uint16_t(1) << v;
    out.values[s] = r.values[sn] + r.values[phi_inv] - r.values[sl];
  }
  return out;
}

}  // namespace cistruct::lp
