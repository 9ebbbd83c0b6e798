// SPDX-License-Identifier: MIT
// Self-adhesion: gluing a model with a fresh copy of itself along a subset
// L of its ground set, closing in the frame over the doubled ground set and
// marginalizing back.  Provides the single-L closure step, the L-policy
// iteration to the self-adhesive closure, double self-adhesion, and the
// k-fold (multi-copy) variant.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cistruct/closure.hpp"
#include "cistruct/lp.hpp"
#include "cistruct/model.hpp"
#include "cistruct/types.hpp"

namespace cistruct {

// Shared cache of closure engines keyed by ground size, so that iterating
// over many L reuses clause databases and learned clauses.  Not thread-safe;
// use one per worker.
class SaContext {
 public:
  SaContext(Frame frame, EngineOptions opts = {});

  Frame frame() const { return frame_; }
  const EngineOptions& options() const { return opts_; }

  // Engine for an arbitrary ground set of size |g|; clause sets depend only
  // on the size, so the engine is cached per size and reused (labels do not
  // matter for closure_subset calls, which work on indices).
  ClosureEngine& engine_for(const GroundPtr& g);

  // Resolve SaPolicy::Default against the frame's capability flags.
  SaPolicy resolve_policy(SaPolicy p) const;
  // Sizes of L to scan for ground size n under the policy (ascending).
  std::vector<int> policy_sizes(int n, SaPolicy p) const;

 private:
  Frame frame_;
  EngineOptions opts_;
  std::vector<std::unique_ptr<ClosureEngine>> by_size_;
  std::vector<GroundPtr> ground_by_size_;
};

// Self-adhesive closure of m at the set L (mask over m's ground): glue a
// disjoint copy of m along L, add the expanded global statement
// [N \ L, copy(N) \ L | L], close in the frame over the doubled ground set
// and return the statements of sta(N) in that closure.  The result always
// contains the plain frame closure of m.
Model sa_closure_at(SaContext& ctx, const Model& m, uint16_t l_mask);

// As above for k independent copies: all copies of m are glued along L and
// the global statements [union of copies in P \ L, union in Q \ L | L] for
// every pair of disjoint non-empty subsets P, Q of {0..k} are added.  k = 1
// coincides with sa_closure_at.  Throws CapError when k*(n-|L|)+n exceeds
// kMaxGround.
Model kfold_closure_at(SaContext& ctx, const Model& m, uint16_t l_mask, int k);

// Is m self-adhesive (a fixpoint of sa_closure_at for every L of the
// policy)?  m must belong to the frame.  On failure reports the first
// violating L in size-then-lex order.
bool is_self_adhesive(SaContext& ctx, const Model& m,
                      SaPolicy policy = SaPolicy::Default,
                      uint16_t* witness_l = nullptr);

// Least self-adhesive frame model containing m: frame closure first, then
// the L-cycle (restart-on-change by default, full-sweep union under
// SaIteration::FullSweep), iterated to a fixpoint.
Model sa_closure(SaContext& ctx, const Model& m,
                 SaPolicy policy = SaPolicy::Default);

// ---------------------------------------------------------------------------
// Double self-adhesion: the same construction one level up, with the
// self-adhesive closure as the inner operator.  The E-cycle scans |E| in
// {2, 3} (lifting covers smaller E; co-singletons must be scanned because
// tight replication is not known to preserve self-adhesivity).
// ---------------------------------------------------------------------------

Model sa2_closure_at(SaContext& ctx, const Model& m, uint16_t e_mask);
Model sa2_closure(SaContext& ctx, const Model& m);
bool is_doubly_self_adhesive(SaContext& ctx, const Model& m,
                             uint16_t* witness_e = nullptr);

// ---------------------------------------------------------------------------
// Structural self-adhesion screening support
// ---------------------------------------------------------------------------

// Verdict of self-adhesivity of a *structural* model at L, using the
// certificate fast path (modular combination of an interior representative,
// verified supermodular) and falling back to the exact LP closure.
// `rep` must satisfy mod rep = m.
bool structural_sa_at(const lp::SetFunction& rep, const Model& m,
                      uint16_t l_mask);

// Frame-specialized self-adhesivity test used by the cataloguing and
// screening pipelines.  For the structural frame it combines a semigraphoid
// prefilter (a gluing that gains a statement in the weaker frame already
// disproves self-adhesion), the supermodular-certificate fast path, and the
// exact LP fallback; for the other frames it is is_self_adhesive.  `aux`
// should be a semigraphoid context when ctx is structural (may be null);
// `rep` optionally supplies a precomputed interior representative.
bool selfadhesive_verdict(SaContext& ctx, SaContext* aux, const Model& m,
                          SaPolicy policy = SaPolicy::Default,
                          uint16_t* witness_l = nullptr,
                          const lp::SetFunction* rep = nullptr);

}  // namespace cistruct
