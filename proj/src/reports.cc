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

#include "nlbox/reports.h"

#include <algorithm>

#include "nlbox/descriptors.h"

namespace nlbox {

using nlohmann::json;

json chsh_report(const std::string &model, double exact_score, const ChshEstimate *estimate) {
    json doc{{"model", model}, {"exact_score", exact_score}};
    if (estimate != nullptr) {
        doc["score"] = estimate->score;
        doc["std_error"] = estimate->std_error;
        doc["trials_per_setting"] = estimate->trials_per_setting;
        doc["seed"] = estimate->seed.value;
        json wins = json::array();
        for (std::size_t s = 0; s < kAllSettings.size(); s++) {
            wins.push_back({{"x", int(kAllSettings[s].x)}, {"y", int(kAllSettings[s].y)}, {"wins", estimate->wins[s]}});
        }
        doc["wins"] = std::move(wins);
    }
    return doc;
}

json verify_report(const std::string &function, const std::string &model, const VerifyReport &report, RngSeed seed) {
    json histogram = json::object();
    for (const auto &[bits, count] : report.bits_histogram) {
        histogram[std::to_string(bits)] = count;
    }
    std::uint64_t worst = 0;
    for (auto e : report.pair_errors) {
        worst = std::max(worst, e);
    }
    json doc{
        {"function", function},
        {"model", model},
        {"n", report.n},
        {"pairs", report.pairs},
        {"trials_per_pair", report.trials_per_pair},
        {"errors", report.errors},
        {"bits_per_run", nullptr},
        {"boxes_per_run", report.boxes_per_run},
        {"seed", seed.value},
        {"runs", report.runs},
        {"bits_histogram", std::move(histogram)},
        {"max_pair_error_frequency", double(worst) / double(report.trials_per_pair)},
    };
    if (report.bits_histogram.size() == 1) {
        doc["bits_per_run"] = report.bits_histogram.begin()->first;
    }
    return doc;
}

json no_signalling_json(const std::string &model, const NoSignallingReport &report, RngSeed seed) {
    json checks = json::array();
    for (const auto &c : report.checks) {
        checks.push_back({
            {"site", c.site == Site::Alice ? "alice" : "bob"},
            {"own_input", int(c.own_input)},
            {"p_one_other_0", c.frequency_one[0]},
            {"p_one_other_1", c.frequency_one[1]},
            {"tv_distance", c.tv_distance},
        });
    }
    return {
        {"model", model},
        {"trials", report.trials},
        {"threshold", report.threshold},
        {"seed", seed.value},
        {"checks", std::move(checks)},
        {"pass", report.pass},
    };
}

json local_bound_json(const LocalBoundReport &report) {
    json strategies = json::array();
    for (const auto &s : report.strategies) {
        strategies.push_back({{"strategy", format_model(s.strategy)}, {"score", s.score}});
    }
    json argmax = json::array();
    for (const auto &s : report.argmax) {
        argmax.push_back(format_model(s));
    }
    return {{"strategies", std::move(strategies)}, {"max_score", report.max_score}, {"argmax", std::move(argmax)}};
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "p,N,trials,empirical_success,analytic_success,std_error,seed\n";
    for (const auto &r : rows) {
        out += format_double(r.p) + "," + std::to_string(r.boxes) + "," + std::to_string(r.trials) + "," +
               format_double(r.empirical_success) + "," + format_double(r.analytic_success) + "," +
               format_double(r.std_error) + "," + std::to_string(r.seed.value) + "\n";
    }
    return out;
}

json sweep_json(std::span<const SweepRow> rows) {
    json out = json::array();
    for (const auto &r : rows) {
        out.push_back({
            {"p", r.p},
            {"N", r.boxes},
            {"trials", r.trials},
            {"empirical_success", r.empirical_success},
            {"analytic_success", r.analytic_success},
            {"std_error", r.std_error},
            {"seed", r.seed.value},
        });
    }
    return out;
}

}  // namespace nlbox
