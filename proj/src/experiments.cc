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

#include "nlbox/experiments.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nlbox/boolfn.h"
#include "nlbox/parallel.h"
#include "nlbox/protocol.h"

namespace nlbox {

namespace {

// Counts units in [0, count) for which hit(unit) is true, spread over workers.
template <class Hit>
std::uint64_t count_hits(std::uint64_t count, unsigned workers, Hit &&hit) {
    std::vector<std::uint64_t> partial(workers == 0 ? default_workers() : workers, 0);
    parallel_slices(count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned slice) {
        std::uint64_t local = 0;
        for (std::uint64_t u = begin; u < end; u++) {
            local += hit(u);
        }
        partial[slice] = local;
    });
    std::uint64_t total = 0;
    for (auto v : partial) {
        total += v;
    }
    return total;
}

}  // namespace

ChshEstimate chsh_monte_carlo(
    const CorrelationModel &model, std::uint64_t trials_per_setting, RngSeed seed, unsigned workers) {
    if (trials_per_setting == 0) {
        throw std::invalid_argument("trials per setting must be at least 1");
    }
    validate(model);

    ChshEstimate estimate;
    estimate.trials_per_setting = trials_per_setting;
    estimate.seed = seed;
    double variance = 0;
    for (std::uint64_t s = 0; s < kAllSettings.size(); s++) {
        const BoxInput input = kAllSettings[s];
        const std::uint64_t offset = s * trials_per_setting;
        estimate.wins[s] = count_hits(trials_per_setting, workers, [&](std::uint64_t t) {
            Rng rng = Rng::derive(seed, offset + t);
            return chsh_wins(input, sample_box(model, input, rng));
        });
        double f = double(estimate.wins[s]) / double(trials_per_setting);
        estimate.score += f;
        variance += f * (1 - f) / double(trials_per_setting);
    }
    estimate.std_error = std::sqrt(variance);
    return estimate;
}

NoSignallingReport no_signalling_test(
    const BoxSampler &sampler, std::uint64_t trials, RngSeed seed, double threshold, unsigned workers) {
    if (trials < 10'000) {
        throw std::invalid_argument("no-signalling test needs at least 10^4 trials per condition");
    }
    NoSignallingReport report;
    report.trials = trials;
    report.threshold = threshold;
    report.pass = true;

    for (unsigned c = 0; c < 4; c++) {
        SignallingCheck &check = report.checks[c];
        check.site = c < 2 ? Site::Alice : Site::Bob;
        check.own_input = (c & 1) != 0;
        for (unsigned other = 0; other < 2; other++) {
            const BoxInput input = check.site == Site::Alice ? BoxInput{check.own_input, other != 0}
                                                             : BoxInput{other != 0, check.own_input};
            const std::uint64_t offset = (2 * c + other) * trials;
            std::uint64_t ones = count_hits(trials, workers, [&](std::uint64_t t) {
                Rng rng = Rng::derive(seed, offset + t);
                BoxOutput out = sampler(input, rng);
                return check.site == Site::Alice ? out.alpha : out.beta;
            });
            check.frequency_one[other] = double(ones) / double(trials);
        }
        // For binary outcomes TV distance is the gap in P(1).
        check.tv_distance = std::abs(check.frequency_one[0] - check.frequency_one[1]);
        report.pass = report.pass && check.tv_distance < threshold;
    }
    return report;
}

NoSignallingReport no_signalling_test(
    const CorrelationModel &model, std::uint64_t trials, RngSeed seed, double threshold, unsigned workers) {
    validate(model);
    BoxSampler sampler = [&model](BoxInput input, Rng &rng) { return sample_box(model, input, rng); };
    return no_signalling_test(sampler, trials, seed, threshold, workers);
}

double noisy_ip_success(double p, unsigned boxes) {
    return (1 + std::pow(2 * p - 1, boxes)) / 2;
}

std::vector<SweepRow> noisy_sweep(
    std::span<const double> p_grid,
    std::span<const unsigned> box_counts,
    std::uint64_t trials,
    RngSeed seed,
    unsigned workers) {
    if (trials == 0) {
        throw std::invalid_argument("sweep needs at least one trial");
    }
    for (double p : p_grid) {
        if (!(p >= 0.5 && p <= 1.0)) {
            throw std::invalid_argument("sweep probabilities must lie in [1/2, 1]");
        }
    }
    for (unsigned n : box_counts) {
        if (n == 0 || n > 64) {
            throw std::invalid_argument("sweep box counts must lie in [1, 64]");
        }
    }

    std::vector<SweepRow> rows;
    std::uint64_t row_index = 0;
    for (double p : p_grid) {
        const CorrelationModel model = NoisyPR{p};
        for (unsigned n : box_counts) {
            SweepRow row;
            row.p = p;
            row.boxes = n;
            row.trials = trials;
            row.seed = seed;
            row.analytic_success = noisy_ip_success(p, n);
            row.std_error = std::sqrt(row.analytic_success * (1 - row.analytic_success) / double(trials));

            const std::uint64_t offset = row_index * trials;
            std::uint64_t successes = count_hits(trials, workers, [&](std::uint64_t t) {
                Rng rng = Rng::derive(seed, offset + t);
                const std::uint64_t x_index = rng.bits(n);
                const std::uint64_t y_index = rng.bits(n);
                BoxPool pool(model, n);
                ProtocolResult r = run_ip_protocol(bits_of(x_index, n), bits_of(y_index, n), pool, rng);
                return r.output == ((std::popcount(x_index & y_index) & 1) != 0);
            });
            row.empirical_success = double(successes) / double(trials);
            rows.push_back(row);
            row_index++;
        }
    }
    return rows;
}

LocalBoundReport local_bound_report() {
    LocalBoundReport report;
    report.strategies = enumerate_local_strategies();
    for (const auto &s : report.strategies) {
        report.max_score = std::max(report.max_score, s.score);
    }
    for (const auto &s : report.strategies) {
        if (s.score == report.max_score) {
            report.argmax.push_back(s.strategy);
        }
    }
    return report;
}

}  // namespace nlbox
