// SPDX-License-Identifier: MIT
// C bindings: thin extern-C wrappers around the C++ core with opaque
// handles, thread-local error reporting and malloc'd string outputs.

#include "ci/ci.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cistruct/clauses.hpp"
#include "cistruct/closure.hpp"
#include "cistruct/entropic.hpp"
#include "cistruct/io.hpp"
#include "cistruct/lattice.hpp"
#include "cistruct/lp.hpp"
#include "cistruct/model.hpp"
#include "cistruct/parallel.hpp"
#include "cistruct/selfadhesion.hpp"
#include "cistruct/types.hpp"

using namespace cistruct;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int set_error(const std::string& msg, int code) {
  g_last_error = msg;
  return code;
}

template <typename F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CI_OK;
  } catch (const ParseError& e) {
    return set_error(e.what(), CI_EPARSE);
  } catch (const CapError& e) {
    return set_error(e.what(), CI_ECAP);
  } catch (const BackendError& e) {
    return set_error(e.what(), CI_EBACKEND);
  } catch (const std::exception& e) {
    return set_error(e.what(), CI_EINVAL);
  }
}

int null_arg() { return set_error("null argument", CI_EINVAL); }

std::string str_or_empty(const char* s) { return s ? std::string(s) : ""; }

SaPolicy policy_from(const char* text) {
  std::string p = str_or_empty(text);
  if (p.empty() || p == "default") return SaPolicy::Default;
  if (p == "reduced") return SaPolicy::Reduced;
  if (p == "full") return SaPolicy::Full;
  throw InvalidArgument("unknown policy '" + p + "'");
}

Backend backend_from(const char* text) {
  std::string b = str_or_empty(text);
  if (b.empty() || b == "auto") return Backend::Auto;
  if (b == "sat") return Backend::Sat;
  if (b == "lp") return Backend::Lp;
  throw InvalidArgument("unknown backend '" + b + "'");
}

uint16_t mask_from_labels(const GroundSet& g, const char* text) {
  uint16_t mask = 0;
  for (const std::string& tok : split_ws(str_or_empty(text))) {
    int v = g.index_of(tok);
    if (v < 0) throw InvalidArgument("unknown label '" + tok + "'");
    if (mask & (1u << v)) throw InvalidArgument("repeated label '" + tok + "'");
    mask |= uint16_t(1u << v);
  }
  return mask;
}

std::string label_list(const GroundSet& g, uint16_t mask) {
  std::string out;
  for (int v = 0; v < g.size(); ++v)
    if (mask & (1u << v)) {
      if (!out.empty()) out += ' ';
      out += g.label(v);
    }
  return out;
}

std::string implication_line(const GroundSet& g, const Implication& imp) {
  std::ostringstream out;
  auto side = [&](const Bitset& b) {
    bool first = true;
    b.for_each_set([&](int k) {
      if (!first) out << " ; ";
      first = false;
      out << g.statement_text(g.statement_at(k));
    });
  };
  side(imp.antecedent);
  out << " => ";
  side(imp.consequent);
  return out.str();
}

std::string listing(const GroundSet& g, const std::vector<Bitset>& rows) {
  std::ostringstream out;
  out << "ground:";
  for (int v = 0; v < g.size(); ++v) out << ' ' << g.label(v);
  out << '\n';
  for (const Bitset& b : rows) out << format_model_line(b) << '\n';
  return out.str();
}

}  // namespace

struct ci_engine {
  Frame frame;
  EngineOptions opts;
  SaContext ctx;
  std::unique_ptr<SaContext> aux;  // semigraphoid prefilter (structural only)

  ci_engine(Frame f, const EngineOptions& o) : frame(f), opts(o), ctx(f, o) {
    if (f == Frame::Structural)
      aux = std::make_unique<SaContext>(Frame::Semigraphoid, o);
  }
};

struct ci_catalogue {
  Frame frame = Frame::Semigraphoid;
  EngineOptions opts;
  GroundPtr ground;
  std::vector<Bitset> family;
  std::optional<OrbitClasses> orbits;
  std::optional<std::vector<Bitset>> irr;
  std::optional<std::vector<Bitset>> coat;
  std::optional<std::vector<Implication>> basis;
  bool basis_perfect = false;
};

namespace {

const OrbitClasses& orbits_of(ci_catalogue* c) {
  if (!c->orbits) c->orbits = orbit_classes(*c->ground, c->family);
  return *c->orbits;
}

const std::vector<Bitset>& irr_of(ci_catalogue* c) {
  if (!c->irr) c->irr = meet_irreducibles(c->family, c->ground->sta_size());
  return *c->irr;
}

const std::vector<Bitset>& coat_of(ci_catalogue* c) {
  if (!c->coat) c->coat = coatoms(c->family, c->ground->sta_size());
  return *c->coat;
}

const std::vector<Implication>& basis_of(ci_catalogue* c) {
  if (!c->basis) {
    MooreOracle oracle = oracle_from_family(c->family, c->ground->sta_size());
    c->basis = canonical_basis(oracle);
    c->basis_perfect = is_implicatively_perfect(oracle, *c->basis);
  }
  return *c->basis;
}

}  // namespace

extern "C" {

const char* ci_version(void) { return "0.1.0"; }

const char* ci_last_error(void) { return g_last_error.c_str(); }

void ci_str_free(char* s) { std::free(s); }

int ci_engine_new(const char* frame, const char* backend,
                  const char* solver_exe, int workers, ci_engine** out) {
  if (!frame || !out) return null_arg();
  return guarded([&] {
    const FrameSpec* spec = frame_by_name(frame);
    if (!spec) throw InvalidArgument("unknown frame '" + std::string(frame) + "'");
    if (workers < 1) throw InvalidArgument("workers must be >= 1");
    EngineOptions opts;
    opts.backend = backend_from(backend);
    opts.solver_exe = str_or_empty(solver_exe);
    opts.workers = workers;
    *out = new ci_engine(spec->frame, opts);
  });
}

void ci_engine_free(ci_engine* e) { delete e; }

int ci_closure(ci_engine* e, const char* model_text, char** out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    *out = dup_string(format_model(e->ctx.engine_for(m.ground()).closure(m)));
  });
}

int ci_member(ci_engine* e, const char* model_text, int* out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    *out = e->ctx.engine_for(m.ground()).is_member(m) ? 1 : 0;
  });
}

int ci_check_implications(ci_engine* e, const char* implications_text,
                          char** report, int* all_valid) {
  if (!e || !implications_text || !report || !all_valid) return null_arg();
  return guarded([&] {
    ImplicationFile file = parse_implications(implications_text);
    ClosureEngine& eng = e->ctx.engine_for(file.ground);
    std::ostringstream lines;
    bool all = true;
    for (const Implication& imp : file.implications) {
      bool ok = eng.check_implication(imp);
      all = all && ok;
      lines << (ok ? "valid" : "invalid") << '\t'
            << implication_line(*file.ground, imp) << '\n';
    }
    *all_valid = all ? 1 : 0;
    *report = dup_string(lines.str());
  });
}

int ci_sa_closure_at(ci_engine* e, const char* model_text,
                     const char* l_labels, char** out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    uint16_t l = mask_from_labels(*m.ground(), l_labels);
    *out = dup_string(format_model(sa_closure_at(e->ctx, m, l)));
  });
}

int ci_sa_closure(ci_engine* e, const char* model_text, const char* policy,
                  char** out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    *out = dup_string(format_model(sa_closure(e->ctx, m, policy_from(policy))));
  });
}

int ci_sa2_closure(ci_engine* e, const char* model_text, char** out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    *out = dup_string(format_model(sa2_closure(e->ctx, m)));
  });
}

int ci_kfold_closure_at(ci_engine* e, const char* model_text,
                        const char* l_labels, int k, char** out) {
  if (!e || !model_text || !out) return null_arg();
  return guarded([&] {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    Model m = parse_model(model_text);
    uint16_t l = mask_from_labels(*m.ground(), l_labels);
    *out = dup_string(format_model(kfold_closure_at(e->ctx, m, l, k)));
  });
}

int ci_selfadhesive(ci_engine* e, const char* model_text, const char* policy,
                    int* verdict, char** witness_l) {
  if (!e || !model_text || !verdict) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    uint16_t wl = 0;
    bool sa = selfadhesive_verdict(e->ctx, e->aux.get(), m,
                                   policy_from(policy), &wl);
    *verdict = sa ? 1 : 0;
    if (witness_l)
      *witness_l = dup_string(sa ? "" : label_list(*m.ground(), wl));
  });
}

int ci_screen(ci_engine* e, const char* rays_text, const char* policy,
              char** csv) {
  if (!e || !rays_text || !csv) return null_arg();
  return guarded([&] {
    std::vector<CoatomRecord> recs = ingest_rays(rays_text);
    std::vector<ScreenResult> results =
        screen_records(e->frame, recs, policy_from(policy), e->opts);
    *csv = dup_string(screen_report_csv(recs, results));
  });
}

int ci_axioms_dimacs(const char* frame, int n, char** out) {
  if (!frame || !out) return null_arg();
  return guarded([&] {
    const FrameSpec* spec = frame_by_name(frame);
    if (!spec) throw InvalidArgument("unknown frame '" + std::string(frame) + "'");
    ClauseSet cs = frame_clauses(spec->frame, n);
    GroundPtr g = GroundSet::alphabetic(n);
    *out = dup_string(write_dimacs(cs, g.get()));
  });
}

int ci_dual(const char* model_text, char** out) {
  if (!model_text || !out) return null_arg();
  return guarded([&] {
    *out = dup_string(format_model(dual(parse_model(model_text))));
  });
}

int ci_marginal(const char* model_text, const char* labels, char** out) {
  if (!model_text || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    uint16_t s = mask_from_labels(*m.ground(), labels);
    *out = dup_string(format_model(marginal(m, s)));
  });
}

int ci_intersect(const char* a_text, const char* b_text, char** out) {
  if (!a_text || !b_text || !out) return null_arg();
  return guarded([&] {
    *out = dup_string(
        format_model(intersect(parse_model(a_text), parse_model(b_text))));
  });
}

int ci_lift(const char* model_text, const char* big_labels, char** out) {
  if (!model_text || !big_labels || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    GroundPtr big = GroundSet::make(split_ws(big_labels));
    std::vector<uint8_t> embedding;
    for (int v = 0; v < m.ground()->size(); ++v) {
      int idx = big->index_of(m.ground()->label(v));
      if (idx < 0)
        throw InvalidArgument("label '" + m.ground()->label(v) +
                              "' missing from the larger ground set");
      embedding.push_back(uint8_t(idx));
    }
    *out = dup_string(format_model(lift_model(m, big, embedding)));
  });
}

int ci_replicate(const char* model_text, const char* u_label,
                 const char* v_label, char** out) {
  if (!model_text || !u_label || !out) return null_arg();
  return guarded([&] {
    Model m = parse_model(model_text);
    int u = m.ground()->index_of(u_label);
    if (u < 0)
      throw InvalidArgument("unknown label '" + std::string(u_label) + "'");
    *out = dup_string(
        format_model(tight_replicate(m, u, str_or_empty(v_label))));
  });
}

int ci_least_adhesion(const char* a_text, const char* b_text, char** out) {
  if (!a_text || !b_text || !out) return null_arg();
  return guarded([&] {
    *out = dup_string(format_model(
        least_adhesion(parse_model(a_text), parse_model(b_text))));
  });
}

int ci_expand_global(const char* ground_labels, const char* i_labels,
                     const char* j_labels, const char* k_labels, char** out) {
  if (!ground_labels || !out) return null_arg();
  return guarded([&] {
    GroundPtr g = GroundSet::make(split_ws(ground_labels));
    uint16_t I = mask_from_labels(*g, i_labels);
    uint16_t J = mask_from_labels(*g, j_labels);
    uint16_t K = mask_from_labels(*g, k_labels);
    *out = dup_string(format_model(expand_global(g, I, J, K)));
  });
}

int ci_graph_model(const char* ground_labels, const char* edges, char** out) {
  if (!ground_labels || !out) return null_arg();
  return guarded([&] {
    GroundPtr g = GroundSet::make(split_ws(ground_labels));
    std::vector<std::pair<int, int>> pairs;
    for (const std::string& tok : split_ws(str_or_empty(edges))) {
      size_t comma = tok.find(',');
      if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos)
        throw InvalidArgument("edge '" + tok + "' is not of the form u,v");
      int a = g->index_of(tok.substr(0, comma));
      int b = g->index_of(tok.substr(comma + 1));
      if (a < 0 || b < 0 || a == b)
        throw InvalidArgument("bad edge '" + tok + "'");
      pairs.emplace_back(a, b);
    }
    *out = dup_string(format_model(graph_separation_model(g, pairs)));
  });
}

int ci_induced_model(const char* set_function_text, char** out) {
  if (!set_function_text || !out) return null_arg();
  return guarded([&] {
    SetFunctionFile file = parse_set_function(set_function_text);
    lp::SetFunction fn{file.ground, std::move(file.values)};
    *out = dup_string(format_model(lp::induced_model(fn)));
  });
}

int ci_catalogue_build(ci_engine* e, int n, ci_catalogue** out) {
  if (!e || !out) return null_arg();
  return guarded([&] {
    auto cat = std::make_unique<ci_catalogue>();
    cat->frame = e->frame;
    cat->opts = e->opts;
    cat->ground = GroundSet::alphabetic(n);
    cat->family = enumerate_frame(e->frame, n, e->opts);
    *out = cat.release();
  });
}

int ci_catalogue_restrict_selfadhesive(ci_engine* e, ci_catalogue* c,
                                       ci_catalogue** out) {
  if (!e || !c || !out) return null_arg();
  return guarded([&] {
    const OrbitClasses& oc = orbits_of(c);
    int workers = std::max(1, e->opts.workers);
    std::vector<std::unique_ptr<SaContext>> ctxs;
    std::vector<std::unique_ptr<SaContext>> auxs;
    for (int w = 0; w < workers; ++w) {
      ctxs.push_back(std::make_unique<SaContext>(e->frame, e->opts));
      auxs.push_back(e->frame == Frame::Structural
                         ? std::make_unique<SaContext>(Frame::Semigraphoid,
                                                       e->opts)
                         : nullptr);
    }
    std::vector<char> keep(oc.representatives.size(), 0);
    parallel_for(int(oc.representatives.size()), workers, [&](int i, int w) {
      Model rep(c->ground, oc.representatives[i]);
      keep[i] =
          selfadhesive_verdict(*ctxs[w], auxs[w].get(), rep) ? 1 : 0;
    });
    auto sub = std::make_unique<ci_catalogue>();
    sub->frame = c->frame;
    sub->opts = c->opts;
    sub->ground = c->ground;
    for (size_t k = 0; k < c->family.size(); ++k)
      if (keep[oc.orbit_of[k]]) sub->family.push_back(c->family[k]);
    *out = sub.release();
  });
}

void ci_catalogue_free(ci_catalogue* c) { delete c; }

int ci_catalogue_size(ci_catalogue* c, uint64_t* models, uint64_t* types) {
  if (!c || !models || !types) return null_arg();
  return guarded([&] {
    *models = c->family.size();
    *types = orbits_of(c).representatives.size();
  });
}

int ci_catalogue_summary(ci_catalogue* c, const char* family_name,
                         char** csv) {
  if (!c || !family_name || !csv) return null_arg();
  return guarded([&] {
    CatalogueSummary s;
    s.family = family_name;
    s.models = c->family.size();
    s.types = orbits_of(c).representatives.size();
    s.irreducibles = irr_of(c).size();
    s.irreducible_types =
        orbit_classes(*c->ground, irr_of(c)).representatives.size();
    s.coatoms_count = coat_of(c).size();
    s.coatom_types =
        orbit_classes(*c->ground, coat_of(c)).representatives.size();
    *csv = dup_string(summary_csv_header() + "\n" + summary_csv_row(s) + "\n");
  });
}

int ci_catalogue_models(ci_catalogue* c, int types_only, char** out) {
  if (!c || !out) return null_arg();
  return guarded([&] {
    *out = dup_string(listing(
        *c->ground, types_only ? orbits_of(c).representatives : c->family));
  });
}

int ci_catalogue_irreducibles(ci_catalogue* c, int types_only, char** out) {
  if (!c || !out) return null_arg();
  return guarded([&] {
    const std::vector<Bitset>& rows = irr_of(c);
    *out = dup_string(listing(
        *c->ground,
        types_only ? orbit_classes(*c->ground, rows).representatives : rows));
  });
}

int ci_catalogue_coatoms(ci_catalogue* c, int types_only, char** out) {
  if (!c || !out) return null_arg();
  return guarded([&] {
    const std::vector<Bitset>& rows = coat_of(c);
    *out = dup_string(listing(
        *c->ground,
        types_only ? orbit_classes(*c->ground, rows).representatives : rows));
  });
}

int ci_catalogue_basis(ci_catalogue* c, int types_only, int* perfect,
                       char** out) {
  if (!c || !out) return null_arg();
  return guarded([&] {
    const std::vector<Implication>& basis = basis_of(c);
    std::string text;
    if (types_only) {
      std::map<std::pair<Bitset, Bitset>, int> canon;
      for (const Implication& imp : basis)
        canon.emplace(implication_canonical_form(*c->ground, imp), 0);
      std::vector<Implication> reps;
      for (const auto& entry : canon)
        reps.push_back(Implication{entry.first.first, entry.first.second});
      text = format_implications(*c->ground, reps);
    } else {
      text = format_implications(*c->ground, basis);
    }
    if (perfect) *perfect = c->basis_perfect ? 1 : 0;
    *out = dup_string(text);
  });
}

}  // extern "C"
