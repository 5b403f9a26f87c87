// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLBOX_REPORTS_H
#define NLBOX_REPORTS_H

#include <span>
#include <string>

#include "json.hpp"

#include "nlbox/experiments.h"
#include "nlbox/protocol.h"

namespace nlbox {

// Reports contain no timestamps or host data, so equal inputs give byte-identical output.

nlohmann::json chsh_report(const std::string &model, double exact_score, const ChshEstimate *estimate);

/// { "function", "model", "n", "pairs", "trials_per_pair", "errors", "bits_per_run",
///   "boxes_per_run", "seed", ... }. bits_per_run is null if runs disagreed.
nlohmann::json verify_report(
    const std::string &function, const std::string &model, const VerifyReport &report, RngSeed seed);

nlohmann::json no_signalling_json(const std::string &model, const NoSignallingReport &report, RngSeed seed);

nlohmann::json local_bound_json(const LocalBoundReport &report);

/// Header p,N,trials,empirical_success,analytic_success,std_error,seed then one line per row.
std::string sweep_csv(std::span<const SweepRow> rows);
nlohmann::json sweep_json(std::span<const SweepRow> rows);

}  // namespace nlbox

#endif
