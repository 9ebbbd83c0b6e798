// SPDX-License-Identifier: MIT
// Screening of externally supplied model lists (typically extreme rays of
// the supermodular cone / coatoms of larger lattices) for self-adhesivity.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cistruct/lp.hpp"
#include "cistruct/model.hpp"
#include "cistruct/types.hpp"

namespace cistruct {

struct CoatomRecord {
  std::string id;
  Model model;
  std::optional<lp::SetFunction> function;  // present for set-function records
  bool trusted_coatom = false;              // declared a coatom by the source
};

// Parses a multi-record ray file.  Records start at each `ground:` header;
// an `id: <text>` line immediately before the header names the record
// (anonymous records get r0, r1, ...).  A record is either a supermodular
// set function (its induced model is taken) or a plain model in the model
// text format.  Permutation-equivalent models are merged, keeping the first
// id.
std::vector<CoatomRecord> ingest_rays(const std::string& text);

struct ScreenResult {
  std::string id;
  int orbit_size = 0;
  bool selfadhesive = false;
  uint16_t witness_l = 0;  // first violating L (mask) when not self-adhesive
  int64_t millis = 0;
};

// Screens every record for self-adhesivity in the given frame; workers > 1
// distributes records over threads (results keep input order).
std::vector<ScreenResult> screen_records(Frame frame,
                                         const std::vector<CoatomRecord>& recs,
                                         SaPolicy policy = SaPolicy::Default,
                                         const EngineOptions& opts = {});

// CSV report: id,orbit_size,verdict,witness_L,millis.
std::string screen_report_csv(const std::vector<CoatomRecord>& recs,
                              const std::vector<ScreenResult>& results);

}  // namespace cistruct
