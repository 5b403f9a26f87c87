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

#ifndef NLBOX_EXPERIMENTS_H
#define NLBOX_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nlbox/correlations.h"
#include "nlbox/rng.h"

namespace nlbox {

struct ChshEstimate {
    double score = 0;
    double std_error = 0;
    std::uint64_t trials_per_setting = 0;
    RngSeed seed;
    /// Wins per setting, in kAllSettings order.
    std::array<std::uint64_t, 4> wins{};
};

/// Samples each of the four settings `trials_per_setting` times and sums the win
/// frequencies. Trial t of setting s uses Rng::derive(seed, s * trials + t).
/// std_error = sqrt(sum over settings of f (1 - f) / trials).
ChshEstimate chsh_monte_carlo(
    const CorrelationModel &model, std::uint64_t trials_per_setting, RngSeed seed, unsigned workers = 0);

/// Any box, possibly signalling. Used to test the no-signalling test itself.
using BoxSampler = std::function<BoxOutput(BoxInput, Rng &)>;

struct SignallingCheck {
    Site site = Site::Alice;
    bool own_input = false;
    /// Observed P(output = 1) with the other site's setting at 0 and at 1.
    std::array<double, 2> frequency_one{};
    /// Total-variation distance between the two conditional output laws.
    double tv_distance = 0;
};

struct NoSignallingReport {
    std::uint64_t trials = 0;
    double threshold = 0;
    std::array<SignallingCheck, 4> checks{};
    bool pass = false;
};

inline constexpr double kDefaultSignallingThreshold = 0.01;

/// For every (site, own setting) samples `trials` boxes with each value of the other setting
/// and compares the site's output frequencies. Passes when every TV distance is below
/// `threshold`. Throws std::invalid_argument for trials < 10^4.
NoSignallingReport no_signalling_test(
    const CorrelationModel &model,
    std::uint64_t trials,
    RngSeed seed,
    double threshold = kDefaultSignallingThreshold,
    unsigned workers = 0);
NoSignallingReport no_signalling_test(
    const BoxSampler &sampler,
    std::uint64_t trials,
    RngSeed seed,
    double threshold = kDefaultSignallingThreshold,
    unsigned workers = 0);

/// P(IP protocol output is correct) over `boxes` NoisyPR(p) boxes: the output is wrong iff an
/// odd number of boxes misfire, giving (1 + (2p - 1)^boxes) / 2.
double noisy_ip_success(double p, unsigned boxes);

struct SweepRow {
    double p = 0;
    unsigned boxes = 0;
    std::uint64_t trials = 0;
    double empirical_success = 0;
    double analytic_success = 0;
    /// sqrt(s (1 - s) / trials) with s the analytic success.
    double std_error = 0;
    RngSeed seed;
};

/// For every p in p_grid and N in box_counts runs the IP protocol `trials` times on uniformly
/// random N-bit inputs with NoisyPR(p) boxes. Throws std::invalid_argument for p outside
/// [1/2, 1], N == 0, N > 64 or trials == 0. Rows are ordered p-major.
std::vector<SweepRow> noisy_sweep(
    std::span<const double> p_grid,
    std::span<const unsigned> box_counts,
    std::uint64_t trials,
    RngSeed seed,
    unsigned workers = 0);

struct LocalBoundReport {
    std::vector<LocalStrategyScore> strategies;
    int max_score = 0;
    std::vector<LocalDeterministic> argmax;
};

LocalBoundReport local_bound_report();

}  // namespace nlbox

#endif
