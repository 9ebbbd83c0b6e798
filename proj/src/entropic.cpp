// SPDX-License-Identifier: MIT

#include "cistruct/entropic.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <utility>

#include "cistruct/io.hpp"
#include "cistruct/lattice.hpp"
#include "cistruct/parallel.hpp"
#include "cistruct/selfadhesion.hpp"

namespace cistruct {

namespace {

struct RawRecord {
  std::string id;
  bool coatom = false;
  std::vector<std::string> lines;  // ground header plus payload
};

bool is_set_function_record(const RawRecord& raw) {
  for (size_t k = 1; k < raw.lines.size(); ++k)
    if (raw.lines[k].rfind("set", 0) == 0) return true;
  return false;
}

}  // namespace

std::vector<CoatomRecord> ingest_rays(const std::string& text) {
  std::vector<RawRecord> raws;
  std::string pending_id;
  bool have_pending = false;
  std::istringstream iss(text);
  std::string line;
  while (std::getline(iss, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("id:", 0) == 0) {
      if (have_pending)
        throw ParseError("'id:' lines must be followed by a 'ground:' header");
      pending_id = trim(line.substr(3));
      if (pending_id.empty()) throw ParseError("empty record id");
      have_pending = true;
      continue;
    }
    if (line.rfind("ground:", 0) == 0) {
      RawRecord raw;
      if (have_pending) {
        raw.id = pending_id;
        have_pending = false;
      } else {
        raw.id = "r" + std::to_string(raws.size());
      }
      raw.lines.push_back(line);
      raws.push_back(std::move(raw));
      continue;
    }
    if (have_pending)
      throw ParseError("'id:' lines must be followed by a 'ground:' header");
    if (raws.empty())
      throw ParseError("expected an 'id:' or 'ground:' line, got '" + line +
                       "'");
    if (line.rfind("coatom:", 0) == 0) {
      std::string v = trim(line.substr(7));
      raws.back().coatom = (v == "yes" || v == "true" || v == "1");
      continue;
    }
    raws.back().lines.push_back(line);
  }
  if (have_pending)
    throw ParseError("dangling 'id:' line at the end of the file");

  std::vector<CoatomRecord> out;
  std::map<std::pair<int, Bitset>, size_t> seen;  // (n, canonical form)
  for (const RawRecord& raw : raws) {
    std::ostringstream body;
    for (const std::string& l : raw.lines) body << l << '\n';
    CoatomRecord rec{raw.id, Model(GroundSet::alphabetic(2)), std::nullopt,
                     raw.coatom};
    if (is_set_function_record(raw)) {
      SetFunctionFile f = parse_set_function(body.str());
      lp::SetFunction sf{f.ground, std::move(f.values)};
      if (!lp::check_supermodular(sf))
        throw ParseError("record '" + raw.id +
                         "': the set function is not supermodular");
      rec.model = lp::induced_model(sf);
      rec.function = std::move(sf);
    } else {
      rec.model = parse_model(body.str());
    }
    std::pair<int, Bitset> key{
        rec.model.ground()->size(),
        orbit_canonical_form(*rec.model.ground(), rec.model.bits())};
    if (seen.emplace(std::move(key), out.size()).second)
      out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ScreenResult> screen_records(Frame frame,
                                         const std::vector<CoatomRecord>& recs,
                                         SaPolicy policy,
                                         const EngineOptions& opts) {
  int workers = std::max(1, opts.workers);
  bool structural = frame == Frame::Structural;
  std::vector<std::unique_ptr<SaContext>> contexts;
  std::vector<std::unique_ptr<SaContext>> prefilters;  // structural only
  for (int w = 0; w < workers; ++w) {
    contexts.push_back(std::make_unique<SaContext>(frame, opts));
    if (structural)
      prefilters.push_back(
          std::make_unique<SaContext>(Frame::Semigraphoid, opts));
  }

  std::vector<ScreenResult> results(recs.size());
  parallel_for(recs.size(), workers, [&](size_t i, int worker) {
    const CoatomRecord& rec = recs[i];
    SaContext& ctx = *contexts[worker];
    SaContext* aux = structural ? prefilters[worker].get() : nullptr;
    auto t0 = std::chrono::steady_clock::now();
    ScreenResult r;
    r.id = rec.id;
    r.orbit_size = orbit_size(*rec.model.ground(), rec.model.bits());
    std::optional<lp::SetFunction> rep;
    if (structural && rec.function) rep = lp::standardize(*rec.function);
    try {
      r.selfadhesive = selfadhesive_verdict(ctx, aux, rec.model, policy,
                                            &r.witness_l,
                                            rep ? &*rep : nullptr);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("record '" + rec.id + "': " + e.what());
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
    results[i] = std::move(r);
  });
  return results;
}

std::string screen_report_csv(const std::vector<CoatomRecord>& recs,
                              const std::vector<ScreenResult>& results) {
  if (recs.size() != results.size())
    throw InvalidArgument("records and results do not match");
  std::ostringstream out;
  out << "id,orbit_size,verdict,witness_L,millis\n";
  for (size_t i = 0; i < results.size(); ++i) {
    const ScreenResult& r = results[i];
    out << r.id << ',' << r.orbit_size << ','
        << (r.selfadhesive ? "yes" : "no") << ',';
    if (!r.selfadhesive) {
      const GroundSet& g = *recs[i].model.ground();
      bool first = true;
      for (int v = 0; v < g.size(); ++v)
        if (r.witness_l & (1u << v)) {
          if (!first) out << ';';
          first = false;
          out << g.label(v);
        }
    }
    out << ',' << r.millis << '\n';
  }
  return out.str();
}

}  // namespace cistruct
