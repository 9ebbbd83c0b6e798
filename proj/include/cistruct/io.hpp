// SPDX-License-Identifier: MIT
// Text formats: CI models, implication lists, supermodular set functions,
// DIMACS export and catalogue files.  All writers are deterministic:
// identical inputs produce byte-identical output.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cistruct/clauses.hpp"
#include "cistruct/implication.hpp"
#include "cistruct/model.hpp"

namespace cistruct {

// ---------------------------------------------------------------------------
// Model text format
//
//   # optional comments anywhere
//   ground: a b c d
//   a b |
//   a b | c d
//
// One statement per line: two variable labels, a bar, the conditioning
// labels.  Duplicate statements are rejected.  ParseError on any problem.
// ---------------------------------------------------------------------------
Model parse_model(const std::string& text);
std::string format_model(const Model& m);  // statements in canonical order

// ---------------------------------------------------------------------------
// Implication list format
//
//   ground: a b c d
//   a b | ; a d | b => a d | ; a b | d
//
// One implication per line; statements separated by ';', antecedents and
// consequents separated by '=>'.
// ---------------------------------------------------------------------------
struct ImplicationFile {
  GroundPtr ground;
  std::vector<Implication> implications;
};
ImplicationFile parse_implications(const std::string& text);
std::string format_implications(const GroundSet& g,
                                const std::vector<Implication>& impls);

// ---------------------------------------------------------------------------
// Supermodular set-function format
//
//   ground: a b c d
//   set - value 0
//   set a b value 3
//   set a b c d value 12/7
//
// '-' denotes the empty set; unlisted sets default to 0; values are
// integers or fractions p/q.
// ---------------------------------------------------------------------------
struct SetFunctionFile {
  GroundPtr ground;
  std::vector<mpq_class> values;  // indexed by subset mask, size 2^n
};
SetFunctionFile parse_set_function(const std::string& text);
std::string format_set_function(const GroundSet& g,
                                const std::vector<mpq_class>& values);

// ---------------------------------------------------------------------------
// DIMACS CNF export with statement-name comments:
//
//   c var 1 = a b |
//   ...
//   p cnf <vars> <clauses>
//   -1 2 0
// ---------------------------------------------------------------------------
std::string write_dimacs(const ClauseSet& cs, const GroundSet* names);

// Catalogue model lines: sorted statement indices in lowercase hex,
// space-separated; the empty model prints as "-".
std::string format_model_line(const Bitset& bits);
Bitset parse_model_line(const std::string& line, int universe);

// Shared low-level helpers.
std::vector<std::string> split_ws(const std::string& s);
std::string trim(const std::string& s);

}  // namespace cistruct
