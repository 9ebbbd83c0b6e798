// SPDX-License-Identifier: MIT

#include "cistruct/selfadhesion.hpp"

#include <algorithm>

namespace cistruct {

SaContext::SaContext(Frame frame, EngineOptions opts)
    : frame_(frame), opts_(std::move(opts)) {
  by_size_.resize(kMaxGround + 1);
  ground_by_size_.resize(kMaxGround + 1);
}

ClosureEngine& SaContext::engine_for(const GroundPtr& g) {
  int n = g->size();
  if (!by_size_[n]) {
    ground_by_size_[n] = GroundSet::alphabetic(n);
    by_size_[n] =
        std::make_unique<ClosureEngine>(frame_, ground_by_size_[n], opts_);
  }
  return *by_size_[n];
}

SaPolicy SaContext::resolve_policy(SaPolicy p) const {
  if (p != SaPolicy::Default) return p;
  const FrameSpec& fs = frame_spec(frame_);
  return fs.closed_under_lifting && fs.closed_under_tight_replication
             ? SaPolicy::Reduced
             : SaPolicy::Full;
}

std::vector<int> SaContext::policy_sizes(int n, SaPolicy p) const {
  p = resolve_policy(p);
  std::vector<int> out;
  int lo = p == SaPolicy::Reduced ? 2 : 0;
  int hi = p == SaPolicy::Reduced ? n - 2 : n - 1;
  for (int s = lo; s <= hi; ++s) out.push_back(s);
  return out;
}

namespace {

// The glued premise set over the doubled ground set: both copies of m plus
// the global independence [N \ L, N' \ L | L], with the index map from
// sta(N) into the doubled statement universe.
struct Glue {
  DoubledGround dg;
  Bitset xi;
  std::vector<int> idx;  // sta(N) index -> doubled index
};

Glue make_glue(const Model& m, uint16_t l_mask) {
  const GroundSet& g = *m.ground();
  Glue gl{doubled_ground(g, l_mask), Bitset(0), {}};
  const GroundPtr& big = gl.dg.big;
  Model xi = ascetic_extend(m, big, gl.dg.embed_n);
  xi.bits() |= ascetic_extend(m, big, gl.dg.bijection).bits();
  uint16_t outside = uint16_t(gl.dg.n_mask_big & ~gl.dg.l_mask_big);
  xi.bits() |=
      expand_global(big, outside, gl.dg.copies_mask_big, gl.dg.l_mask_big)
          .bits();
  gl.xi = xi.bits();
  gl.idx.resize(g.sta_size());
  for (int k = 0; k < g.sta_size(); ++k) {
    Statement s = g.statement_at(k);
    gl.idx[k] = big->statement_index(s.i, s.j, s.cond);
  }
  return gl;
}

// Closure helper over an engine: the full closure of `bits`.
Bitset close_bits(ClosureEngine& eng, const Bitset& bits) {
  Bitset rest = bits.complement();
  Bitset out = bits;
  out |= eng.closure_subset(bits, rest);
  return out;
}

std::vector<uint16_t> policy_ls(SaContext& ctx, int n, SaPolicy policy) {
  std::vector<uint16_t> ls;
  for (int sz : ctx.policy_sizes(n, policy))
    for (uint16_t l : subsets_by_size(n, sz, sz)) ls.push_back(l);
  return ls;
}

}  // namespace

Model sa_closure_at(SaContext& ctx, const Model& m, uint16_t l_mask) {
  const GroundSet& g = *m.ground();
  Glue gl = make_glue(m, l_mask);
  ClosureEngine& eng = ctx.engine_for(gl.dg.big);
  // Only the statements of sta(N) outside m can be gained; restrict the
  // closure to those candidates.
  Bitset candidates(gl.dg.big->sta_size());
  for (int k = 0; k < g.sta_size(); ++k)
    if (!m.bits().test(k)) candidates.set(gl.idx[k]);
  Bitset added = eng.closure_subset(gl.xi, candidates);
  Model out = m;
  for (int k = 0; k < g.sta_size(); ++k)
    if (added.test(gl.idx[k])) out.bits().set(k);
  return out;
}

Model kfold_closure_at(SaContext& ctx, const Model& m, uint16_t l_mask,
                       int k) {
  const GroundSet& g = *m.ground();
  ReplicatedGround rg = replicated_ground(g, l_mask, k);
  Model xi(rg.big);
  for (int c = 0; c <= k; ++c)
    xi.bits() |= ascetic_extend(m, rg.big, rg.bijections[c]).bits();
  // Global statements [union of copies in P \ L, union in Q \ L | L] for
  // disjoint non-empty P, Q; min(P) < min(Q) picks one of each mirror pair.
  int copies = k + 1;
  for (uint32_t p = 1; p < (1u << copies); ++p) {
    uint32_t rest = ((1u << copies) - 1) & ~p;
    for (uint32_t q = rest; q; q = (q - 1) & rest) {
      if ((p & -p) > (q & -q)) continue;  // enforce min(P) < min(Q)
      uint16_t pi = 0, qi = 0;
      for (int c = 0; c < copies; ++c) {
        if (p & (1u << c)) pi |= rg.copy_masks[c];
        if (q & (1u << c)) qi |= rg.copy_masks[c];
      }
      pi &= uint16_t(~rg.l_mask_big);
      qi &= uint16_t(~rg.l_mask_big);
      xi.bits() |= expand_global(rg.big, pi, qi, rg.l_mask_big).bits();
    }
  }
  ClosureEngine& eng = ctx.engine_for(rg.big);
  std::vector<int> idx(g.sta_size());
  Bitset candidates(rg.big->sta_size());
  for (int s = 0; s < g.sta_size(); ++s) {
    Statement st = g.statement_at(s);
    idx[s] = rg.big->statement_index(st.i, st.j, st.cond);
    if (!m.bits().test(s)) candidates.set(idx[s]);
  }
  Bitset added = eng.closure_subset(xi.bits(), candidates);
  Model out = m;
  for (int s = 0; s < g.sta_size(); ++s)
    if (added.test(idx[s])) out.bits().set(s);
  return out;
}

bool is_self_adhesive(SaContext& ctx, const Model& m, SaPolicy policy,
                      uint16_t* witness_l) {
  const GroundPtr& g = m.ground();
  ClosureEngine& eng = ctx.engine_for(g);
  if (!eng.is_member(m))
    throw InvalidArgument("self-adhesivity is defined for frame models");
  for (uint16_t l : policy_ls(ctx, g->size(), policy)) {
    Model next = sa_closure_at(ctx, m, l);
    if (!(next.bits() == m.bits())) {
      if (witness_l) *witness_l = l;
      return false;
    }
  }
  return true;
}

Model sa_closure(SaContext& ctx, const Model& m, SaPolicy policy) {
  const GroundPtr& g = m.ground();
  std::vector<uint16_t> ls = policy_ls(ctx, g->size(), policy);
  ClosureEngine& eng = ctx.engine_for(g);
  Model cur(g, close_bits(eng, m.bits()));
  if (ctx.options().sa_iteration == SaIteration::RestartOnChange) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint16_t l : ls) {
        Model next = sa_closure_at(ctx, cur, l);
        if (!(next.bits() == cur.bits())) {
          cur = std::move(next);
          changed = true;
          break;  // restart the L scan on the larger model
        }
      }
    }
  } else {
    for (;;) {
      Bitset acc = cur.bits();
      for (uint16_t l : ls) acc |= sa_closure_at(ctx, cur, l).bits();
      acc = close_bits(eng, acc);
      if (acc == cur.bits()) break;
      cur = Model(g, acc);
    }
  }
  return cur;
}

Model sa2_closure_at(SaContext& ctx, const Model& m, uint16_t e_mask) {
  const GroundSet& g = *m.ground();
  Glue gl = make_glue(m, e_mask);
  Model xi(gl.dg.big, gl.xi);
  Model closed = sa_closure(ctx, xi, SaPolicy::Default);
  Model out = m;
  for (int k = 0; k < g.sta_size(); ++k)
    if (closed.bits().test(gl.idx[k])) out.bits().set(k);
  return out;
}

namespace {

std::vector<uint16_t> sa2_es(int n) {
  std::vector<uint16_t> es;
  for (int sz = 2; sz <= n - 1; ++sz)
    for (uint16_t e : subsets_by_size(n, sz, sz)) es.push_back(e);
  return es;
}

}  // namespace

Model sa2_closure(SaContext& ctx, const Model& m) {
  const GroundPtr& g = m.ground();
  Model cur = sa_closure(ctx, m, SaPolicy::Default);
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint16_t e : sa2_es(g->size())) {
      Model next = sa2_closure_at(ctx, cur, e);
      if (!(next.bits() == cur.bits())) {
        cur = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

bool is_doubly_self_adhesive(SaContext& ctx, const Model& m,
                             uint16_t* witness_e) {
  const GroundPtr& g = m.ground();
  ClosureEngine& eng = ctx.engine_for(g);
  if (!eng.is_member(m))
    throw InvalidArgument("double self-adhesivity is defined for frame models");
  for (uint16_t e : sa2_es(g->size())) {
    Model next = sa2_closure_at(ctx, m, e);
    if (!(next.bits() == m.bits())) {
      if (witness_e) *witness_e = e;
      return false;
    }
  }
  return true;
}

bool structural_sa_at(const lp::SetFunction& rep, const Model& m,
                      uint16_t l_mask) {
  const GroundSet& g = *m.ground();
  if (!rep.ground->same_labels(g))
    throw InvalidArgument("representative is over a different ground set");
  if (!(lp::induced_model(rep) == m))
    throw InvalidArgument("representative does not induce the model");
  Glue gl = make_glue(m, l_mask);
  // Certificate fast path: if the modular combination of the representative
  // is supermodular, it witnesses every candidate away at once.
  lp::SetFunction r2 = lp::modular_combination(rep, gl.dg);
  if (lp::check_supermodular(r2)) return true;
  // Exact fallback: structural closure over the doubled ground set.
  Bitset candidates(gl.dg.big->sta_size());
  for (int k = 0; k < g.sta_size(); ++k)
    if (!m.bits().test(k)) candidates.set(gl.idx[k]);
  Bitset added = lp::structural_closure_subset(gl.dg.big, gl.xi, candidates);
  return !added.any();
}

bool selfadhesive_verdict(SaContext& ctx, SaContext* aux, const Model& m,
                          SaPolicy policy, uint16_t* witness_l,
                          const lp::SetFunction* rep) {
  if (ctx.frame() != Frame::Structural)
    return is_self_adhesive(ctx, m, policy, witness_l);
  const GroundPtr& g = m.ground();
  if (m.is_full()) return true;  // the top element glues to itself
  std::optional<lp::SetFunction> own;
  if (!rep) {
    own = lp::interior_representative(g, m.bits());
    if (!own || !(lp::induced_model(*own) == m))
      throw InvalidArgument("model is not structural");
    rep = &*own;
  }
  for (uint16_t l : policy_ls(ctx, g->size(), policy)) {
    if (aux) {
      // Semigraphoid prefilter: the structural gluing closure contains the
      // semigraphoid one, so a gain here already refutes self-adhesion.
      Model glued = sa_closure_at(*aux, m, l);
      if (!(glued.bits() == m.bits())) {
        if (witness_l) *witness_l = l;
        return false;
      }
    }
    if (!structural_sa_at(*rep, m, l)) {
      if (witness_l) *witness_l = l;
      return false;
    }
  }
  return true;
}

}  // namespace cistruct
