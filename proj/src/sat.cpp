// SPDX-License-Identifier: MIT
//
// The embedded solver is a conventional CDCL implementation: two watched
// literals per clause, first-UIP conflict analysis with local clause
// minimization, VSIDS variable activities with an indexed max-heap, phase
// saving, Luby restarts, and activity-based learnt-clause reduction.

#include "cistruct/sat.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cistruct::sat {

namespace {

enum class LB : int8_t { True, False, Undef };

inline LB neg_lb(LB b) {
  if (b == LB::Undef) return b;
  return b == LB::True ? LB::False : LB::True;
}

struct Clause {
  bool learnt;
  double act = 0.0;
  std::vector<Lit> lits;
};

// Indexed binary max-heap over variable activities.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  bool empty() const { return heap_.empty(); }
  bool contains(int v) const {
    return v < int(index_.size()) && index_[v] >= 0;
  }

  void grow(int nvars) { index_.resize(nvars, -1); }

  void insert(int v) {
    if (contains(v)) return;
    index_[v] = int(heap_.size());
    heap_.push_back(v);
    up(index_[v]);
  }

  int pop() {
    int v = heap_[0];
    heap_[0] = heap_.back();
    index_[heap_[0]] = 0;
    heap_.pop_back();
    index_[v] = -1;
    if (!heap_.empty()) down(0);
    return v;
  }

  void bumped(int v) {
    if (contains(v)) up(index_[v]);
  }

 private:
  bool lt(int a, int b) const { return act_[a] > act_[b]; }

  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int p = (i - 1) >> 1;
      if (!lt(v, heap_[p])) break;
      heap_[i] = heap_[p];
      index_[heap_[i]] = i;
      i = p;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  void down(int i) {
    int v = heap_[i];
    for (;;) {
      int c = 2 * i + 1;
      if (c >= int(heap_.size())) break;
      if (c + 1 < int(heap_.size()) && lt(heap_[c + 1], heap_[c])) ++c;
      if (!lt(heap_[c], v)) break;
      heap_[i] = heap_[c];
      index_[heap_[i]] = i;
      i = c;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> index_;
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

struct Solver::Impl {
  // Clause database.
  std::vector<Clause*> clauses;
  std::vector<Clause*> learnts;
  std::vector<std::vector<Clause*>> watches;  // indexed by literal

  // Assignment.
  std::vector<LB> assigns;
  std::vector<char> polarity;  // saved phases (1 = last value was false)
  std::vector<Clause*> reason;
  std::vector<int> level;
  std::vector<Lit> trail;
  std::vector<int> trail_lim;
  size_t qhead = 0;

  // Activities.
  std::vector<double> activity;
  double var_inc = 1.0;
  double cla_inc = 1.0;
  VarHeap order{activity};

  // Scratch.
  std::vector<char> seen;
  std::vector<Lit> assumptions;

  bool ok = true;
  std::vector<LB> model;
  uint64_t n_conflicts = 0, n_decisions = 0, n_propagations = 0;
  double max_learnts = 0;

  ~Impl() {
    for (Clause* c : clauses) delete c;
    for (Clause* c : learnts) delete c;
  }

  int nvars() const { return int(assigns.size()); }
  int decision_level() const { return int(trail_lim.size()); }

  LB value_var(int v) const { return assigns[v]; }
  LB value_lit(Lit l) const {
    return sign_of(l) ? neg_lb(assigns[var_of(l)]) : assigns[var_of(l)];
  }

  int new_var() {
    int v = nvars();
    assigns.push_back(LB::Undef);
    polarity.push_back(1);
    reason.push_back(nullptr);
    level.push_back(0);
    activity.push_back(0.0);
    seen.push_back(0);
    watches.emplace_back();
    watches.emplace_back();
    order.grow(v + 1);
    order.insert(v);
    return v;
  }

  void var_bump(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (double& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    order.bumped(v);
  }

  void cla_bump(Clause& c) {
    c.act += cla_inc;
    if (c.act > 1e100) {
      for (Clause* l : learnts) l->act *= 1e-100;
      cla_inc *= 1e-100;
    }
  }

  void attach(Clause* c) {
    watches[neg(c->lits[0])].push_back(c);
    watches[neg(c->lits[1])].push_back(c);
  }

  void detach(Clause* c) {
    for (Lit w : {c->lits[0], c->lits[1]}) {
      auto& ws = watches[neg(w)];
      ws.erase(std::find(ws.begin(), ws.end(), c));
    }
  }

  void unchecked_enqueue(Lit p, Clause* from) {
    int v = var_of(p);
    assigns[v] = sign_of(p) ? LB::False : LB::True;
    reason[v] = from;
    level[v] = decision_level();
    trail.push_back(p);
  }

  Clause* propagate() {
    Clause* confl = nullptr;
    while (qhead < trail.size()) {
      Lit p = trail[qhead++];
      ++n_propagations;
      auto& ws = watches[p];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        Clause* cr = ws[i++];
        Clause& c = *cr;
        Lit false_lit = neg(p);
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        if (value_lit(c.lits[0]) == LB::True) {
          ws[j++] = cr;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.lits.size(); ++k) {
          if (value_lit(c.lits[k]) != LB::False) {
            std::swap(c.lits[1], c.lits[k]);
            watches[neg(c.lits[1])].push_back(cr);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = cr;
        if (value_lit(c.lits[0]) == LB::False) {
          confl = cr;
          qhead = trail.size();
          while (i < ws.size()) ws[j++] = ws[i++];
          break;
        }
        unchecked_enqueue(c.lits[0], cr);
      }
      ws.resize(j);
      if (confl) break;
    }
    return confl;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (int k = int(trail.size()) - 1; k >= trail_lim[lvl]; --k) {
      int v = var_of(trail[k]);
      polarity[v] = char(assigns[v] == LB::False);
      assigns[v] = LB::Undef;
      reason[v] = nullptr;
      order.insert(v);
    }
    trail.resize(trail_lim[lvl]);
    trail_lim.resize(lvl);
    qhead = trail.size();
  }

  // First-UIP learning; returns the backtrack level, fills `learnt` with the
  // asserting clause (learnt[0] is the asserting literal).
  int analyze(Clause* confl, std::vector<Lit>& learnt) {
    learnt.assign(1, 0);
    int path = 0;
    Lit p = -1;
    int index = int(trail.size()) - 1;
    do {
      Clause& c = *confl;
      if (c.learnt) cla_bump(c);
      for (size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        Lit q = c.lits[k];
        int v = var_of(q);
        if (!seen[v] && level[v] > 0) {
          var_bump(v);
          seen[v] = 1;
          if (level[v] >= decision_level())
            ++path;
          else
            learnt.push_back(q);
        }
      }
      while (!seen[var_of(trail[index--])]) {
      }
      p = trail[index + 1];
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = neg(p);

    // Local minimization: drop literals whose whole reason is already seen.
    size_t out = 1;
    for (size_t k = 1; k < learnt.size(); ++k) {
      int v = var_of(learnt[k]);
      Clause* r = reason[v];
      bool redundant = r != nullptr;
      if (r) {
        for (size_t t = 1; t < r->lits.size() && redundant; ++t) {
          int w = var_of(r->lits[t]);
          if (!seen[w] && level[w] > 0) redundant = false;
        }
      }
      if (!redundant) learnt[out++] = learnt[k];
    }
    std::vector<Lit> dropped(learnt.begin() + out, learnt.end());
    learnt.resize(out);

    int bt = 0;
    if (learnt.size() > 1) {
      size_t max_k = 1;
      for (size_t k = 2; k < learnt.size(); ++k)
        if (level[var_of(learnt[k])] > level[var_of(learnt[max_k])]) max_k = k;
      std::swap(learnt[1], learnt[max_k]);
      bt = level[var_of(learnt[1])];
    }
    for (Lit q : learnt) seen[var_of(q)] = 0;
    for (Lit q : dropped) seen[var_of(q)] = 0;
    return bt;
  }

  void reduce_db() {
    std::sort(learnts.begin(), learnts.end(),
              [](const Clause* a, const Clause* b) { return a->act < b->act; });
    size_t keep = learnts.size() / 2, out = 0;
    for (size_t k = 0; k < learnts.size(); ++k) {
      Clause* c = learnts[k];
      bool locked = reason[var_of(c->lits[0])] == c &&
                    value_lit(c->lits[0]) == LB::True;
      if (c->lits.size() > 2 && !locked && k < keep) {
        detach(c);
        delete c;
      } else {
        learnts[out++] = c;
      }
    }
    learnts.resize(out);
  }

  bool add_clause(std::vector<Lit> lits) {
    if (!ok) return false;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<Lit> kept;
    for (size_t k = 0; k < lits.size(); ++k) {
      if (k + 1 < lits.size() && lits[k] == neg(lits[k + 1])) return true;
      if (k > 0 && lits[k] == neg(lits[k - 1])) return true;
      LB v = value_lit(lits[k]);
      if (v == LB::True && level[var_of(lits[k])] == 0) return true;
      if (v == LB::False && level[var_of(lits[k])] == 0) continue;
      kept.push_back(lits[k]);
    }
    if (kept.empty()) return ok = false;
    if (kept.size() == 1) {
      unchecked_enqueue(kept[0], nullptr);
      if (propagate() != nullptr) return ok = false;
      return true;
    }
    Clause* c = new Clause{false, 0.0, std::move(kept)};
    clauses.push_back(c);
    attach(c);
    return true;
  }

  // l_True / l_False / l_Undef(restart) as LB.
  LB search(int max_conflicts) {
    int conflict_budget = max_conflicts;
    std::vector<Lit> learnt;
    for (;;) {
      Clause* confl = propagate();
      if (confl != nullptr) {
        ++n_conflicts;
        if (decision_level() == 0) {
          ok = false;
          return LB::False;
        }
        int bt = analyze(confl, learnt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          unchecked_enqueue(learnt[0], nullptr);
        } else {
          Clause* c = new Clause{true, 0.0, learnt};
          learnts.push_back(c);
          attach(c);
          cla_bump(*c);
          unchecked_enqueue(learnt[0], c);
        }
        var_inc /= 0.95;
        cla_inc /= 0.999;
        if (--conflict_budget == 0) {
          cancel_until(0);
          return LB::Undef;
        }
      } else {
        if (double(learnts.size()) - double(trail.size()) >= max_learnts)
          reduce_db();
        Lit next = -1;
        while (decision_level() < int(assumptions.size())) {
          Lit p = assumptions[decision_level()];
          if (value_lit(p) == LB::True) {
            trail_lim.push_back(int(trail.size()));  // dummy level
          } else if (value_lit(p) == LB::False) {
            return LB::False;
          } else {
            next = p;
            break;
          }
        }
        if (next == -1) {
          ++n_decisions;
          int v = -1;
          while (!order.empty()) {
            v = order.pop();
            if (assigns[v] == LB::Undef) break;
            v = -1;
          }
          if (v == -1) return LB::True;
          next = mk_lit(v, polarity[v]);
        }
        trail_lim.push_back(int(trail.size()));
        unchecked_enqueue(next, nullptr);
      }
    }
  }

  bool solve(const std::vector<Lit>& assumps) {
    if (!ok) return false;
    assumptions = assumps;
    max_learnts = std::max(1000.0, double(clauses.size()) / 3.0);
    LB status = LB::Undef;
    int restarts = 0;
    while (status == LB::Undef) {
      status = search(int(luby(2.0, restarts) * 100));
      ++restarts;
    }
    if (status == LB::True) model = assigns;
    cancel_until(0);
    assumptions.clear();
    return status == LB::True;
  }
};

Solver::Solver() : impl_(new Impl) {}
Solver::~Solver() = default;

int Solver::new_var() { return impl_->new_var(); }
int Solver::num_vars() const { return impl_->nvars(); }

void Solver::ensure_vars(int n) {
  while (impl_->nvars() < n) impl_->new_var();
}

bool Solver::add_clause(const std::vector<Lit>& lits) {
  for (Lit l : lits) ensure_vars(var_of(l) + 1);
  return impl_->add_clause(lits);
}

bool Solver::add_clause_dimacs(const std::vector<int>& dimacs_lits) {
  std::vector<Lit> lits;
  lits.reserve(dimacs_lits.size());
  for (int dl : dimacs_lits) {
    if (dl == 0) throw InvalidArgument("literal 0 is not allowed");
    lits.push_back(from_dimacs(dl));
  }
  return add_clause(lits);
}

bool Solver::solve(const std::vector<Lit>& assumptions) {
  for (Lit l : assumptions) ensure_vars(var_of(l) + 1);
  return impl_->solve(assumptions);
}

bool Solver::model_value(int var) const {
  if (var < 0 || var >= int(impl_->model.size()))
    throw InvalidArgument("no model value for this variable");
  return impl_->model[var] == LB::True;
}

bool Solver::okay() const { return impl_->ok; }
uint64_t Solver::conflicts() const { return impl_->n_conflicts; }
uint64_t Solver::decisions() const { return impl_->n_decisions; }
uint64_t Solver::propagations() const { return impl_->n_propagations; }

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

namespace {

class EmbeddedEngine : public SatEngine {
 public:
  explicit EmbeddedEngine(const ClauseSet& cs) : universe_(cs.num_vars) {
    solver_.ensure_vars(cs.num_vars);
    for (const std::vector<int>& clause : cs.clauses)
      solver_.add_clause_dimacs(clause);
  }

  bool satisfiable(const std::vector<int>& assumptions,
                   Bitset* witness) override {
    std::vector<Lit> assumps;
    assumps.reserve(assumptions.size());
    for (int dl : assumptions) assumps.push_back(from_dimacs(dl));
    if (!solver_.solve(assumps)) return false;
    if (witness) {
      Bitset bits(universe_);
      for (int v = 0; v < universe_; ++v)
        if (solver_.model_value(v)) bits.set(v);
      *witness = std::move(bits);
    }
    return true;
  }

 private:
  int universe_;
  Solver solver_;
};

class ExternalEngine : public SatEngine {
 public:
  ExternalEngine(const ClauseSet& cs, std::string exe)
      : cs_(&cs), exe_(std::move(exe)) {}

  bool satisfiable(const std::vector<int>& assumptions,
                   Bitset* witness) override {
    char path[] = "/tmp/cistruct_cnf_XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) throw BackendError("cannot create a temporary CNF file");
    {
      std::ostringstream cnf;
      cnf << "p cnf " << cs_->num_vars << ' '
          << cs_->clauses.size() + assumptions.size() << '\n';
      for (const std::vector<int>& clause : cs_->clauses) {
        for (int lit : clause) cnf << lit << ' ';
        cnf << "0\n";
      }
      for (int lit : assumptions) cnf << lit << " 0\n";
      std::string text = cnf.str();
      size_t off = 0;
      while (off < text.size()) {
        ssize_t w = ::write(fd, text.data() + off, text.size() - off);
        if (w <= 0) {
          ::close(fd);
          ::unlink(path);
          throw BackendError("cannot write the temporary CNF file");
        }
        off += size_t(w);
      }
      ::close(fd);
    }

    std::string cmd = exe_ + " " + path + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      ::unlink(path);
      throw BackendError("cannot run the external solver '" + exe_ + "'");
    }
    std::string output;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
      output.append(buf, got);
    pclose(pipe);
    ::unlink(path);

    bool sat = false, unsat = false;
    std::vector<int8_t> vals(cs_->num_vars, -1);
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.rfind("s ", 0) == 0) {
        if (line.find("UNSATISFIABLE") != std::string::npos)
          unsat = true;
        else if (line.find("SATISFIABLE") != std::string::npos)
          sat = true;
      } else if (line.rfind("v", 0) == 0 && (line.size() == 1 ||
                 line[1] == ' ')) {
        std::istringstream vs(line.substr(1));
        int lit;
        while (vs >> lit) {
          if (lit == 0) break;
          int v = std::abs(lit) - 1;
          if (v < cs_->num_vars) vals[v] = lit > 0 ? 1 : 0;
        }
      }
    }
    if (!sat && !unsat)
      throw BackendError("the external solver '" + exe_ +
                         "' did not report a status line");
    if (sat && witness) {
      Bitset bits(cs_->num_vars);
      for (int v = 0; v < cs_->num_vars; ++v)
        if (vals[v] == 1) bits.set(v);
      *witness = std::move(bits);
    }
    return sat;
  }

 private:
  const ClauseSet* cs_;
  std::string exe_;
};

}  // namespace

std::unique_ptr<SatEngine> make_embedded_engine(const ClauseSet& cs) {
  return std::make_unique<EmbeddedEngine>(cs);
}

std::unique_ptr<SatEngine> make_external_engine(const ClauseSet& cs,
                                                std::string solver_exe) {
  return std::make_unique<ExternalEngine>(cs, std::move(solver_exe));
}

std::unique_ptr<SatEngine> make_engine(const ClauseSet& cs,
                                       const EngineOptions& opts) {
  if (!opts.solver_exe.empty()) return make_external_engine(cs, opts.solver_exe);
  if (const char* env = std::getenv("CI_SAT_SOLVER"); env && *env)
    return make_external_engine(cs, env);
  return make_embedded_engine(cs);
}

// ---------------------------------------------------------------------------
// Complete enumeration
// ---------------------------------------------------------------------------

namespace {

// Exhaustive recursion with queue-driven unit propagation over occurrence
// lists.  Every leaf with all variables assigned is a model.
class Enumerator {
 public:
  Enumerator(const ClauseSet& cs, uint64_t cap) : cs_(cs), cap_(cap) {
    val_.assign(cs.num_vars, -1);
    occ_.resize(cs.num_vars);
    for (size_t c = 0; c < cs.clauses.size(); ++c)
      for (int lit : cs.clauses[c]) occ_[std::abs(lit) - 1].push_back(int(c));
  }

  std::vector<Bitset> run() {
    // Clauses that are vacuously false (empty) mean no models.
    for (const auto& clause : cs_.clauses)
      if (clause.empty()) return {};
    rec(0);
    return std::move(out_);
  }

 private:
  bool assign(int v, int8_t b) {
    val_[v] = b;
    trail_.push_back(v);
    for (int c : occ_[v]) {
      int unassigned = -1;
      bool sat = false;
      int free_count = 0;
      for (int lit : cs_.clauses[c]) {
        int w = std::abs(lit) - 1;
        int8_t want = lit > 0 ? 1 : 0;
        if (val_[w] == -1) {
          ++free_count;
          unassigned = lit;
        } else if (val_[w] == want) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (free_count == 0) return false;
      if (free_count == 1) {
        int w = std::abs(unassigned) - 1;
        if (!assign(w, unassigned > 0 ? 1 : 0)) return false;
      }
    }
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  void rec(int from) {
    int v = from;
    while (v < cs_.num_vars && val_[v] != -1) ++v;
    if (v == cs_.num_vars) {
      if (out_.size() >= cap_)
        throw CapError("model enumeration exceeded the cap of " +
                       std::to_string(cap_) + " models");
      Bitset bits(cs_.num_vars);
      for (int w = 0; w < cs_.num_vars; ++w)
        if (val_[w] == 1) bits.set(w);
      out_.push_back(std::move(bits));
      return;
    }
    for (int8_t b : {int8_t(0), int8_t(1)}) {
      size_t mark = trail_.size();
      if (assign(v, b)) rec(v + 1);
      undo_to(mark);
    }
  }

  const ClauseSet& cs_;
  uint64_t cap_;
  std::vector<int8_t> val_;
  std::vector<std::vector<int>> occ_;
  std::vector<int> trail_;
  std::vector<Bitset> out_;
};

std::vector<Bitset> enumerate_by_blocking(const ClauseSet& cs,
                                          uint64_t cap) {
  Solver solver;
  solver.ensure_vars(cs.num_vars);
  for (const std::vector<int>& clause : cs.clauses)
    solver.add_clause_dimacs(clause);
  std::vector<Bitset> out;
  while (solver.okay() && solver.solve()) {
    if (out.size() >= cap)
      throw CapError("model enumeration exceeded the cap of " +
                     std::to_string(cap) + " models");
    Bitset bits(cs.num_vars);
    std::vector<Lit> block;
    block.reserve(cs.num_vars);
    for (int v = 0; v < cs.num_vars; ++v) {
      bool val = solver.model_value(v);
      if (val) bits.set(v);
      block.push_back(mk_lit(v, val));  // negation of the assigned value
    }
    out.push_back(std::move(bits));
    if (!solver.add_clause(block)) break;
  }
  return out;
}

}  // namespace

std::vector<Bitset> enumerate_models(const ClauseSet& cs,
                                     const EngineOptions& opts) {
  if (cs.num_vars < 0) throw InvalidArgument("negative variable count");
  if (opts.blocking_enumeration)
    return enumerate_by_blocking(cs, opts.model_cap);
  return Enumerator(cs, opts.model_cap).run();
}

std::vector<Bitset> brute_force_models(const ClauseSet& cs) {
  if (cs.num_vars > 24)
    throw InvalidArgument("brute force is limited to 24 variables");
  std::vector<Bitset> out;
  for (uint64_t m = 0; m < (uint64_t(1) << cs.num_vars); ++m) {
    Bitset bits(cs.num_vars);
    for (int v = 0; v < cs.num_vars; ++v)
      if (m & (uint64_t(1) << v)) bits.set(v);
    if (cs.satisfied_by(bits)) out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace cistruct::sat
