// SPDX-License-Identifier: MIT
// Shared enums, option records and the error taxonomy.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cistruct {

// Ground sets are capped so that statement indices, condition masks and the
// doubled/replicated ground sets used by self-adhesion stay small:
// |sta(12)| = 66 * 2^10 = 67584.
inline constexpr int kMaxGround = 12;

// Default cap on model counts produced by enumeration.
inline constexpr uint64_t kDefaultModelCap = 100'000'000;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class CiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (model files, implication files, set-function files).
class ParseError : public CiError {
 public:
  using CiError::CiError;
};

// A resource guard tripped (ground-set cap, model-count cap, LP size guard).
class CapError : public CiError {
 public:
  using CiError::CiError;
};

// A reasoning backend failed (external solver missing/misbehaving, LP error).
class BackendError : public CiError {
 public:
  using CiError::CiError;
};

// Caller misuse: mismatched ground sets, unknown labels, bad parameters.
class InvalidArgument : public CiError {
 public:
  using CiError::CiError;
};

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

enum class Frame {
  Semigraphoid,
  Graphoid,
  CompSemigraphoid,  // semigraphoid + composition (duals of graphoids)
  CompGraphoid,      // graphoid + composition
  Structural,        // models of supermodular set functions
};

struct FrameSpec {
  Frame frame;
  const char* name;
  // True when the family is provably closed under the named operation for
  // every ground-set size, which justifies skipping |L| <= 1 (lifting) and
  // |L| = n-1 (tight replication) in self-adhesion screening.  Flags are set
  // conservatively: only the semigraphoid and structural frames have the
  // supporting theorems, so the other frames force the full L-policy.
  bool closed_under_lifting;
  bool closed_under_tight_replication;
};

const FrameSpec& frame_spec(Frame f);
const FrameSpec* frame_by_name(const std::string& name);  // nullptr if unknown

enum class Backend {
  Auto,  // structural: axioms at n = 4, LP otherwise; other frames: SAT
  Sat,
  Lp,
};

enum class SaPolicy {
  Default,  // Reduced when the frame's capability flags allow it, else Full
  Reduced,  // |L| in 2 .. n-2
  Full,     // |L| in 0 .. n-1
};

enum class SaIteration {
  RestartOnChange,  // re-start the L cycle whenever a step adds statements
  FullSweep,        // union over all L per round, iterate rounds to fixpoint
};

struct EngineOptions {
  Backend backend = Backend::Auto;
  std::string solver_exe;  // external DIMACS solver; empty = embedded CDCL
  uint64_t model_cap = kDefaultModelCap;
  int workers = 1;
  bool blocking_enumeration = false;  // AllSAT via blocking clauses
  SaIteration sa_iteration = SaIteration::RestartOnChange;
};

}  // namespace cistruct
