// SPDX-License-Identifier: MIT
// Command-line front end.  Every subcommand is a thin wrapper over the C
// API: inputs are text files (or stdin with "-"), results go to stdout,
// diagnostics to stderr.  Exit codes: 0 success, 2 bad input, 3 backend
// failure, 4 resource cap exceeded (1 is reserved for "query answered
// negatively" where documented, e.g. invalid implications).

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "ci/ci.h"

namespace {

struct CStr {
  char* s = nullptr;
  ~CStr() { ci_str_free(s); }
};

struct EngineHandle {
  ci_engine* e = nullptr;
  ~EngineHandle() { ci_engine_free(e); }
};

struct CatHandle {
  ci_catalogue* c = nullptr;
  ~CatHandle() { ci_catalogue_free(c); }
};

int exit_code(int rc) {
  switch (rc) {
    case CI_OK:
      return 0;
    case CI_EBACKEND:
      return 3;
    case CI_ECAP:
      return 4;
    default:
      return 2;
  }
}

int fail(int rc) {
  std::cerr << "ci: " << ci_last_error() << '\n';
  return exit_code(rc);
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

int write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return 0;
}

// Options shared by the engine-backed subcommands.
struct EngineOpts {
  std::string frame = "semigraphoid";
  std::string backend = "auto";
  std::string solver_exe;
  int workers = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--frame", frame,
                    "semigraphoid | graphoid | comp-semigraphoid | "
                    "comp-graphoid | structural")
        ->capture_default_str();
    cmd->add_option("--backend", backend, "auto | sat | lp")
        ->capture_default_str();
    cmd->add_option("--solver-exe", solver_exe,
                    "external DIMACS solver (default: embedded)");
    cmd->add_option("--workers", workers, "worker threads for bulk work")
        ->capture_default_str();
  }

  int make(EngineHandle& h) const {
    return ci_engine_new(frame.c_str(), backend.c_str(),
                         solver_exe.empty() ? nullptr : solver_exe.c_str(),
                         workers, &h.e);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cistruct: conditional-independence structures, frame "
               "closures, self-adhesion and lattice catalogues"};
  app.require_subcommand(1);
  int result = 0;

  // ---- version ---------------------------------------------------------
  app.add_subcommand("version", "print the library version")->callback([&] {
    std::cout << ci_version() << '\n';
  });

  // ---- closure ---------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "closure", "least frame model containing the input model");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, opts, in, out] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr text;
      if (rc == CI_OK)
        rc = ci_closure(eng.e, read_input(*in).c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- member ----------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto policy = std::make_shared<std::string>("default");
    auto sa = std::make_shared<bool>(false);
    CLI::App* cmd = app.add_subcommand(
        "member", "is the model a member of the frame (or self-adhesive)?");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_flag("--selfadhesive", *sa, "test self-adhesivity instead");
    cmd->add_option("--policy", *policy, "default | reduced | full")
        ->capture_default_str();
    cmd->callback([&result, opts, in, policy, sa] {
      EngineHandle eng;
      int rc = opts->make(eng);
      std::string text = read_input(*in);
      int verdict = 0;
      CStr witness;
      if (rc == CI_OK) {
        rc = *sa ? ci_selfadhesive(eng.e, text.c_str(), policy->c_str(),
                                   &verdict, &witness.s)
                 : ci_member(eng.e, text.c_str(), &verdict);
      }
      if (rc != CI_OK) {
        result = fail(rc);
        return;
      }
      if (verdict) {
        std::cout << "yes\n";
      } else if (witness.s && witness.s[0]) {
        std::cout << "no\t" << witness.s << '\n';
      } else {
        std::cout << "no\n";
      }
    });
  }

  // ---- implication -----------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "implication",
        "validate an implication list against the frame axioms "
        "(exit 1 when some implication is invalid)");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "implication file (- = stdin)")
        ->capture_default_str();
    cmd->callback([&result, opts, in] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr report;
      int all_valid = 0;
      if (rc == CI_OK)
        rc = ci_check_implications(eng.e, read_input(*in).c_str(), &report.s,
                                   &all_valid);
      if (rc != CI_OK) {
        result = fail(rc);
        return;
      }
      std::cout << report.s;
      result = all_valid ? 0 : 1;
    });
  }

  // ---- sa-closure ------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto at = std::make_shared<std::string>();
    auto policy = std::make_shared<std::string>("default");
    auto has_at = std::make_shared<bool>(false);
    CLI::App* cmd = app.add_subcommand(
        "sa-closure",
        "self-adhesive closure (all L per the policy, or one L via --at)");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    CLI::Option* at_opt =
        cmd->add_option("--at", *at, "glue only at this L (labels, e.g. 'b d')");
    cmd->add_option("--policy", *policy, "default | reduced | full")
        ->capture_default_str();
    cmd->callback([&result, opts, in, out, at, policy, has_at, at_opt] {
      *has_at = at_opt->count() > 0;
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr text;
      if (rc == CI_OK) {
        std::string model = read_input(*in);
        rc = *has_at ? ci_sa_closure_at(eng.e, model.c_str(), at->c_str(),
                                        &text.s)
                     : ci_sa_closure(eng.e, model.c_str(), policy->c_str(),
                                     &text.s);
      }
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- sa2-closure -----------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "sa2-closure", "doubly self-adhesive closure");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, opts, in, out] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr text;
      if (rc == CI_OK)
        rc = ci_sa2_closure(eng.e, read_input(*in).c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- kfold -----------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto at = std::make_shared<std::string>();
    auto k = std::make_shared<int>(2);
    CLI::App* cmd = app.add_subcommand(
        "kfold", "k-fold gluing closure at one L");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->add_option("--at", *at, "gluing set L (labels, e.g. 'b d')");
    cmd->add_option("--k", *k, "number of copies")->capture_default_str();
    cmd->callback([&result, opts, in, out, at, k] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr text;
      if (rc == CI_OK)
        rc = ci_kfold_closure_at(eng.e, read_input(*in).c_str(), at->c_str(),
                                 *k, &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- catalogue -------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto n = std::make_shared<int>(4);
    auto what = std::make_shared<std::string>("summary");
    auto name = std::make_shared<std::string>();
    auto sa = std::make_shared<bool>(false);
    auto types = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "catalogue", "enumerate the frame family and analyze its lattice");
    opts->attach(cmd);
    cmd->add_option("--n", *n, "ground-set size")->capture_default_str();
    cmd->add_option("--what", *what,
                    "summary | models | irreducibles | coatoms")
        ->capture_default_str();
    cmd->add_option("--name", *name, "family name in the summary row");
    cmd->add_flag("--selfadhesive", *sa,
                  "restrict to the self-adhesive members first");
    cmd->add_flag("--types", *types, "list one orbit representative per line");
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, opts, n, what, name, sa, types, out] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CatHandle cat;
      if (rc == CI_OK) rc = ci_catalogue_build(eng.e, *n, &cat.c);
      if (rc == CI_OK && *sa) {
        CatHandle sub;
        rc = ci_catalogue_restrict_selfadhesive(eng.e, cat.c, &sub.c);
        if (rc == CI_OK) std::swap(cat.c, sub.c);
      }
      CStr text;
      if (rc == CI_OK) {
        if (*what == "summary") {
          std::string fam = name->empty()
                                ? opts->frame + "-" + std::to_string(*n) +
                                      (*sa ? "-sa" : "")
                                : *name;
          rc = ci_catalogue_summary(cat.c, fam.c_str(), &text.s);
        } else if (*what == "models") {
          rc = ci_catalogue_models(cat.c, *types ? 1 : 0, &text.s);
        } else if (*what == "irreducibles") {
          rc = ci_catalogue_irreducibles(cat.c, *types ? 1 : 0, &text.s);
        } else if (*what == "coatoms") {
          rc = ci_catalogue_coatoms(cat.c, *types ? 1 : 0, &text.s);
        } else {
          std::cerr << "ci: unknown listing '" << *what << "'\n";
          result = 2;
          return;
        }
      }
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- basis -----------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto n = std::make_shared<int>(4);
    auto sa = std::make_shared<bool>(false);
    auto types = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "basis", "canonical implication basis of the frame family");
    opts->attach(cmd);
    cmd->add_option("--n", *n, "ground-set size")->capture_default_str();
    cmd->add_flag("--selfadhesive", *sa,
                  "basis of the self-adhesive subfamily");
    cmd->add_flag("--types", *types,
                  "one implication per relabeling class");
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, opts, n, sa, types, out] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CatHandle cat;
      if (rc == CI_OK) rc = ci_catalogue_build(eng.e, *n, &cat.c);
      if (rc == CI_OK && *sa) {
        CatHandle sub;
        rc = ci_catalogue_restrict_selfadhesive(eng.e, cat.c, &sub.c);
        if (rc == CI_OK) std::swap(cat.c, sub.c);
      }
      CStr text;
      int perfect = 0;
      if (rc == CI_OK)
        rc = ci_catalogue_basis(cat.c, *types ? 1 : 0, &perfect, &text.s);
      if (rc != CI_OK) {
        result = fail(rc);
        return;
      }
      result = write_output(
          *out, std::string(text.s) +
                    (perfect ? "# perfect: yes\n" : "# perfect: no\n"));
    });
  }

  // ---- screen ----------------------------------------------------------
  {
    auto opts = std::make_shared<EngineOpts>();
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto policy = std::make_shared<std::string>("default");
    CLI::App* cmd = app.add_subcommand(
        "screen", "screen a ray/model list for self-adhesivity (CSV out)");
    opts->attach(cmd);
    cmd->add_option("--in", *in, "ray file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->add_option("--policy", *policy, "default | reduced | full")
        ->capture_default_str();
    cmd->callback([&result, opts, in, out, policy] {
      EngineHandle eng;
      int rc = opts->make(eng);
      CStr csv;
      if (rc == CI_OK)
        rc = ci_screen(eng.e, read_input(*in).c_str(), policy->c_str(),
                       &csv.s);
      result = rc == CI_OK ? write_output(*out, csv.s) : fail(rc);
    });
  }

  // ---- axioms ----------------------------------------------------------
  {
    auto frame = std::make_shared<std::string>("semigraphoid");
    auto n = std::make_shared<int>(4);
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "axioms", "frame axioms as DIMACS CNF with statement-name comments");
    cmd->add_option("--frame", *frame, "frame name")->capture_default_str();
    cmd->add_option("--n", *n, "ground-set size")->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, frame, n, out] {
      CStr text;
      int rc = ci_axioms_dimacs(frame->c_str(), *n, &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  // ---- stateless model algebra ------------------------------------------
  {
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand("dual", "dual model ij|K -> ij|N\\(K u ij)");
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, in, out] {
      CStr text;
      int rc = ci_dual(read_input(*in).c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto labels = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand(
        "marginal", "restriction to a sub-ground set");
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--labels", *labels, "labels to keep, e.g. 'a b c'")
        ->required();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, in, out, labels] {
      CStr text;
      int rc = ci_marginal(read_input(*in).c_str(), labels->c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "intersect", "statements common to two models");
    cmd->add_option("--a", *a, "first model file")->required();
    cmd->add_option("--b", *b, "second model file")->required();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, a, b, out] {
      CStr text;
      int rc = ci_intersect(read_input(*a).c_str(), read_input(*b).c_str(),
                            &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto ground = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand(
        "lift", "lift into a larger ground set (fresh variables independent)");
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--ground", *ground, "labels of the larger ground set")
        ->required();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, in, out, ground] {
      CStr text;
      int rc = ci_lift(read_input(*in).c_str(), ground->c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    auto u = std::make_shared<std::string>();
    auto v = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand(
        "replicate", "tight replication of one variable");
    cmd->add_option("--in", *in, "model file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--u", *u, "variable to replicate")->required();
    cmd->add_option("--v", *v, "label of the copy (default: primed)");
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, in, out, u, v] {
      CStr text;
      int rc = ci_replicate(read_input(*in).c_str(), u->c_str(),
                            v->empty() ? nullptr : v->c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "adhesion", "least adhesion of two consonant models");
    cmd->add_option("--a", *a, "first model file")->required();
    cmd->add_option("--b", *b, "second model file")->required();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, a, b, out] {
      CStr text;
      int rc = ci_least_adhesion(read_input(*a).c_str(),
                                 read_input(*b).c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto ground = std::make_shared<std::string>();
    auto ilabels = std::make_shared<std::string>();
    auto js = std::make_shared<std::string>();
    auto ks = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "expand", "expansion of a global statement [I, J | K]");
    cmd->add_option("--ground", *ground, "ground-set labels")->required();
    cmd->add_option("--i", *ilabels, "labels of I")->required();
    cmd->add_option("--j", *js, "labels of J")->required();
    cmd->add_option("--k", *ks, "labels of K (may be empty: '')");
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, ground, ilabels, js, ks, out] {
      CStr text;
      int rc = ci_expand_global(ground->c_str(), ilabels->c_str(), js->c_str(),
                                ks->c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto ground = std::make_shared<std::string>();
    auto edges = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "graph-model", "separation model of an undirected graph");
    cmd->add_option("--ground", *ground, "ground-set labels")->required();
    cmd->add_option("--edges", *edges, "edges like 'a,b b,c'");
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, ground, edges, out] {
      CStr text;
      int rc = ci_graph_model(ground->c_str(), edges->c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }
  {
    auto in = std::make_shared<std::string>("-");
    auto out = std::make_shared<std::string>("-");
    CLI::App* cmd = app.add_subcommand(
        "induced", "CI model induced by a supermodular set function");
    cmd->add_option("--in", *in, "set-function file (- = stdin)")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output file (- = stdout)")
        ->capture_default_str();
    cmd->callback([&result, in, out] {
      CStr text;
      int rc = ci_induced_model(read_input(*in).c_str(), &text.s);
      result = rc == CI_OK ? write_output(*out, text.s) : fail(rc);
    });
  }

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "ci: " << e.what() << '\n';
    return 2;
  }
  return result;
}
