// SPDX-License-Identifier: MIT
// Frame-based closure: the least model of a frame containing a given CI
// model, membership tests, implication validity, and frame enumeration.
// One ClosureEngine per (frame, ground size) keeps its SAT/LP state across
// queries; membership of a candidate t in the closure of M is decided by
// unsatisfiability of  axioms & M & not-t  (SAT frames) or by infeasibility
// of the corresponding supermodular LP (structural frame off n = 4).

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cistruct/clauses.hpp"
#include "cistruct/model.hpp"
#include "cistruct/sat.hpp"
#include "cistruct/types.hpp"

namespace cistruct {

class ClosureEngine {
 public:
  // `backend` Auto resolves to SAT axioms for the four axiomatic frames and
  // for Structural at n = 4, and to the exact LP otherwise.
  ClosureEngine(Frame frame, GroundPtr ground,
                const EngineOptions& opts = {});
  ~ClosureEngine();
  ClosureEngine(const ClosureEngine&) = delete;
  ClosureEngine& operator=(const ClosureEngine&) = delete;

  Frame frame() const { return frame_; }
  const GroundPtr& ground() const { return ground_; }
  Backend effective_backend() const { return backend_; }

  // Least frame model containing m.
  Model closure(const Model& m);

  // The part of the closure of `premises` inside `candidates`; premises and
  // result are plain statement sets over this engine's ground.  This is the
  // workhorse: callers that need only a marginal of a closure restrict the
  // candidates.  Witnesses found along the way prune remaining candidates.
  Bitset closure_subset(const Bitset& premises, const Bitset& candidates);

  // Is m a model of the frame?  (Evaluates the axioms directly for SAT
  // frames; closure fixpoint for the LP path.)
  bool is_member(const Model& m);

  // Do the axioms force every consequent from the antecedents?
  bool check_implication(const Implication& impl);

  // Optional per-candidate transcript: cb(statement index, in_closure).
  using Transcript = std::function<void(int, bool)>;
  void set_transcript(Transcript cb) { transcript_ = std::move(cb); }

 private:
  Bitset sat_closure_subset(const Bitset& premises, const Bitset& candidates);
  Bitset lp_closure_subset(const Bitset& premises, const Bitset& candidates);

  Frame frame_;
  GroundPtr ground_;
  EngineOptions opts_;
  Backend backend_;
  std::unique_ptr<ClauseSet> clauses_;        // SAT path
  std::unique_ptr<sat::SatEngine> engine_;    // SAT path
  Transcript transcript_;
};

// Enumerate the full frame family over ground size n as statement bitsets
// (axiomatic frames and structural at n = 4).  Deterministically ordered by
// (cardinality, numeric value).  Respects opts.model_cap.
std::vector<Bitset> enumerate_frame(Frame f, int n,
                                    const EngineOptions& opts = {});

// Convenience single-shot wrappers (engine construction per call).
Model frame_closure(Frame f, const Model& m, const EngineOptions& opts = {});
bool frame_member(Frame f, const Model& m, const EngineOptions& opts = {});

}  // namespace cistruct
