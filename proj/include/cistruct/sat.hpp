// SPDX-License-Identifier: MIT
// SAT backend: an embedded incremental CDCL solver (watched literals, 1UIP
// learning, VSIDS, phase saving, solving under assumptions), a DIMACS bridge
// to an external solver process, and complete model enumeration.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cistruct/bitset.hpp"
#include "cistruct/clauses.hpp"
#include "cistruct/types.hpp"

namespace cistruct::sat {

// ---------------------------------------------------------------------------
// Embedded CDCL solver.  Variables are 0-based; literals are 2*v (positive)
// and 2*v+1 (negated).
// ---------------------------------------------------------------------------

using Lit = int32_t;
inline Lit mk_lit(int var, bool neg = false) { return 2 * var + (neg ? 1 : 0); }
inline Lit neg(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }
inline bool sign_of(Lit l) { return l & 1; }
// DIMACS-style integer literal (+v/-v, 1-based) to internal and back.
inline Lit from_dimacs(int dl) {
  return dl > 0 ? mk_lit(dl - 1, false) : mk_lit(-dl - 1, true);
}

class Solver {
 public:
  Solver();
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  int new_var();
  int num_vars() const;
  void ensure_vars(int n);

  // Returns false when the clause is conflicting at the root level (the
  // instance became permanently unsatisfiable).
  bool add_clause(const std::vector<Lit>& lits);
  bool add_clause_dimacs(const std::vector<int>& dimacs_lits);

  // Solve under the given assumptions.  Clauses persist between calls.
  bool solve(const std::vector<Lit>& assumptions = {});

  // Value of a variable in the most recent satisfying assignment.
  bool model_value(int var) const;

  bool okay() const;  // false once root-level unsatisfiability is detected

  uint64_t conflicts() const;
  uint64_t decisions() const;
  uint64_t propagations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Query interface shared by the embedded solver and the external bridge.
// One engine instance keeps its clause database across queries.
// ---------------------------------------------------------------------------

class SatEngine {
 public:
  virtual ~SatEngine() = default;
  // Satisfiability of the clause set under positive/negative unit
  // assumptions; when satisfiable and `witness` is non-null, stores the
  // full assignment over the first `universe` variables.
  virtual bool satisfiable(const std::vector<int>& assumptions,
                           Bitset* witness) = 0;
};

// Engine running the embedded CDCL solver on a fixed clause set.
std::unique_ptr<SatEngine> make_embedded_engine(const ClauseSet& cs);

// Engine shelling out to an external DIMACS solver for every query
// (assumptions are appended as unit clauses).  The executable must print a
// standard "s SATISFIABLE/UNSATISFIABLE" status and "v" model lines.
// Throws BackendError when the executable fails or emits garbage.
std::unique_ptr<SatEngine> make_external_engine(const ClauseSet& cs,
                                                std::string solver_exe);

// Picks the external bridge when `opts.solver_exe` (or the CI_SAT_SOLVER
// environment variable) names an executable, the embedded engine otherwise.
std::unique_ptr<SatEngine> make_engine(const ClauseSet& cs,
                                       const EngineOptions& opts);

// ---------------------------------------------------------------------------
// Complete enumeration of satisfying assignments.
// ---------------------------------------------------------------------------

// All models of `cs`, each as a Bitset over num_vars variables.  The default
// method is an exhaustive recursion with unit propagation; with
// `opts.blocking_enumeration` the models are instead harvested from the
// embedded solver by adding one full-assignment blocking clause per model.
// Throws CapError when more than `opts.model_cap` models would be produced.
std::vector<Bitset> enumerate_models(const ClauseSet& cs,
                                     const EngineOptions& opts = {});

// Independent oracle: tests all 2^n assignments (requires num_vars <= 24).
std::vector<Bitset> brute_force_models(const ClauseSet& cs);

}  // namespace cistruct::sat
