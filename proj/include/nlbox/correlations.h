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

#ifndef NLBOX_CORRELATIONS_H
#define NLBOX_CORRELATIONS_H

#include <array>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "nlbox/rng.h"

namespace nlbox {

/// Measurement settings of one box use: x at Alice's site, y at Bob's.
struct BoxInput {
    bool x = false;
    bool y = false;

    constexpr bool operator==(const BoxInput &) const = default;
};

/// Measurement outcomes: alpha at Alice's site, beta at Bob's.
struct BoxOutput {
    bool alpha = false;
    bool beta = false;

    constexpr bool operator==(const BoxOutput &) const = default;
};

enum class Site : std::uint8_t { Alice, Bob };

/// The four setting pairs in canonical order (x + 2y).
inline constexpr std::array<BoxInput, 4> kAllSettings{{{false, false}, {true, false}, {false, true}, {true, true}}};

/// True iff the outputs satisfy the CHSH winning condition alpha ^ beta == x & y.
constexpr bool chsh_wins(BoxInput in, BoxOutput out) {
    return (out.alpha != out.beta) == (in.x && in.y);
}

/// Deterministic local strategy: each site's output is a fixed function of its own setting.
struct LocalDeterministic {
    std::array<bool, 2> alice{};  // output for x = 0, 1
    std::array<bool, 2> bob{};    // output for y = 0, 1

    /// Packs as bit 0 = a0, bit 1 = a1, bit 2 = b0, bit 3 = b1.
    static constexpr LocalDeterministic from_mask(unsigned mask) {
        return {{(mask & 1) != 0, (mask & 2) != 0}, {(mask & 4) != 0, (mask & 8) != 0}};
    }
    constexpr unsigned mask() const {
        return unsigned(alice[0]) | unsigned(alice[1]) << 1 | unsigned(bob[0]) << 2 | unsigned(bob[1]) << 3;
    }
    constexpr BoxOutput respond(BoxInput in) const {
        return {alice[in.x], bob[in.y]};
    }

    constexpr bool operator==(const LocalDeterministic &) const = default;
};

/// Convex mixture of local deterministic strategies driven by shared randomness.
struct SharedRandomness {
    std::vector<std::pair<double, LocalDeterministic>> mixture;
};

/// Correlations of a maximally entangled pair measured at angles in the real plane.
/// P(alpha, beta | x, y) = (1 + (-1)^(alpha ^ beta) cos(a_x - b_y)) / 4.
struct Quantum {
    std::array<double, 2> alice_angles{};
    std::array<double, 2> bob_angles{};

    /// a0 = 0, a1 = pi/2, b0 = pi/4, b1 = -pi/4; reaches the quantum maximum 2 + sqrt(2).
    static Quantum canonical();
};

/// Alice's output uniform, beta = alpha ^ (x & y).
struct PerfectPR {};

/// PerfectPR with probability p, otherwise PerfectPR with Alice's output flipped.
struct NoisyPR {
    double p = 1.0;
};

using CorrelationModel = std::variant<LocalDeterministic, SharedRandomness, Quantum, PerfectPR, NoisyPR>;

/// Throws std::invalid_argument unless the model's parameters are in range
/// (mixture weights nonnegative and summing to 1 within 1e-9, p in [0, 1], finite angles).
void validate(const CorrelationModel &model);

/// Exact outcome probabilities for one setting pair, indexed by 2 * alpha + beta.
struct JointDistribution {
    std::array<double, 4> probability{};

    constexpr double operator()(bool alpha, bool beta) const {
        return probability[2 * unsigned(alpha) + unsigned(beta)];
    }
    double total() const;
    /// Probability that alpha ^ beta == parity.
    double xor_probability(bool parity) const;
};

JointDistribution joint_distribution(const CorrelationModel &model, BoxInput input);

/// Draws one outcome pair from the model's joint law.
BoxOutput sample_box(const CorrelationModel &model, BoxInput input, Rng &rng);

/// Probability that the given site outputs 1 when its own setting is own_input and the
/// other site's setting is other_input.
double marginal_distribution(const CorrelationModel &model, Site site, bool own_input, bool other_input);

/// Number of the four settings a deterministic strategy wins, in {1, 3}.
int local_score(const LocalDeterministic &strategy);

/// Sum over the four settings of P(alpha ^ beta == x & y).
double chsh_score_exact(const CorrelationModel &model);

struct LocalStrategyScore {
    LocalDeterministic strategy;
    int score = 0;
};

/// All 16 deterministic strategies, ordered by LocalDeterministic::mask().
std::vector<LocalStrategyScore> enumerate_local_strategies();

}  // namespace nlbox

#endif
