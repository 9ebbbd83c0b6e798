// SPDX-License-Identifier: MIT

#include "cistruct/closure.hpp"

#include <algorithm>

#include "cistruct/lp.hpp"

namespace cistruct {

ClosureEngine::ClosureEngine(Frame frame, GroundPtr ground,
                             const EngineOptions& opts)
    : frame_(frame), ground_(std::move(ground)), opts_(opts) {
  switch (opts.backend) {
    case Backend::Sat:
      backend_ = Backend::Sat;
      break;
    case Backend::Lp:
      if (frame_ != Frame::Structural)
        throw InvalidArgument(
            "the LP backend decides only the structural frame");
      backend_ = Backend::Lp;
      break;
    case Backend::Auto:
      backend_ = (frame_ == Frame::Structural && ground_->size() != 4)
                     ? Backend::Lp
                     : Backend::Sat;
      break;
  }
  if (backend_ == Backend::Sat) {
    clauses_ =
        std::make_unique<ClauseSet>(frame_clauses(frame_, ground_->size()));
    engine_ = sat::make_engine(*clauses_, opts_);
  }
}

ClosureEngine::~ClosureEngine() = default;

Bitset ClosureEngine::sat_closure_subset(const Bitset& premises,
                                         const Bitset& candidates) {
  Bitset result = candidates & premises;
  Bitset undecided = candidates;
  undecided -= premises;

  std::vector<int> assumptions;
  premises.for_each_set([&](int s) { assumptions.push_back(s + 1); });
  assumptions.push_back(0);  // slot for the negated candidate

  Bitset witness(ground_->sta_size());
  while (undecided.any()) {
    int t = undecided.next_set_bit(0);
    assumptions.back() = -(t + 1);
    if (engine_->satisfiable(assumptions, &witness)) {
      // The witness is a frame model containing the premises; every
      // candidate it misses is outside the closure.
      std::vector<int> out;
      undecided.for_each_set([&](int s) {
        if (!witness.test(s)) out.push_back(s);
      });
      for (int s : out) undecided.reset(s);
    } else {
      result.set(t);
      undecided.reset(t);
    }
  }
  return result;
}

Bitset ClosureEngine::lp_closure_subset(const Bitset& premises,
                                        const Bitset& candidates) {
  return lp::structural_closure_subset(ground_, premises, candidates);
}

Bitset ClosureEngine::closure_subset(const Bitset& premises,
                                     const Bitset& candidates) {
  if (premises.size() != ground_->sta_size() ||
      candidates.size() != ground_->sta_size())
    throw InvalidArgument("statement sets do not match the ground set");
  Bitset result = backend_ == Backend::Sat
                      ? sat_closure_subset(premises, candidates)
                      : lp_closure_subset(premises, candidates);
  if (transcript_)
    candidates.for_each_set([&](int t) { transcript_(t, result.test(t)); });
  return result;
}

Model ClosureEngine::closure(const Model& m) {
  if (m.ground()->size() != ground_->size())
    throw InvalidArgument("model is over a ground set of a different size");
  Bitset all = Bitset(ground_->sta_size()).complement();
  return Model(m.ground(), closure_subset(m.bits(), all));
}

bool ClosureEngine::is_member(const Model& m) {
  if (m.ground()->size() != ground_->size())
    throw InvalidArgument("model is over a ground set of a different size");
  if (backend_ == Backend::Sat) return clauses_->satisfied_by(m.bits());
  Bitset rest = m.bits().complement();
  return !lp_closure_subset(m.bits(), rest).any();
}

bool ClosureEngine::check_implication(const Implication& impl) {
  return closure_subset(impl.antecedent, impl.consequent) == impl.consequent;
}

std::vector<Bitset> enumerate_frame(Frame f, int n, const EngineOptions& opts) {
  ClauseSet cs = frame_clauses(f, n);
  std::vector<Bitset> models = sat::enumerate_models(cs, opts);
  std::sort(models.begin(), models.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  return models;
}

Model frame_closure(Frame f, const Model& m, const EngineOptions& opts) {
  ClosureEngine engine(f, m.ground(), opts);
  return engine.closure(m);
}

bool frame_member(Frame f, const Model& m, const EngineOptions& opts) {
  ClosureEngine engine(f, m.ground(), opts);
  return engine.is_member(m);
}

}  // namespace cistruct
