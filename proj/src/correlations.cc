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

#include "nlbox/correlations.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlbox {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Draws an index in [0, 4) from a table summing to 1.
unsigned sample_index(const std::array<double, 4> &probability, Rng &rng) {
    double u = rng.uniform();
    for (unsigned k = 0; k < 3; k++) {
        if (u < probability[k]) {
            return k;
        }
        u -= probability[k];
    }
    return 3;
}

}  // namespace

Quantum Quantum::canonical() {
    constexpr double pi = std::numbers::pi;
    return Quantum{{0.0, pi / 2}, {pi / 4, -pi / 4}};
}

void validate(const CorrelationModel &model) {
    std::visit(
        overloaded{
            [](const LocalDeterministic &) {},
            [](const SharedRandomness &m) {
                if (m.mixture.empty()) {
                    throw std::invalid_argument("shared-randomness mixture is empty");
                }
                double total = 0;
                for (const auto &[weight, strategy] : m.mixture) {
                    if (!(weight >= 0)) {
                        throw std::invalid_argument("mixture weight must be nonnegative");
                    }
                    total += weight;
                }
                if (std::abs(total - 1.0) > 1e-9) {
                    throw std::invalid_argument("mixture weights sum to " + std::to_string(total) + ", expected 1");
                }
            },
            [](const Quantum &m) {
                for (double a : {m.alice_angles[0], m.alice_angles[1], m.bob_angles[0], m.bob_angles[1]}) {
                    if (!std::isfinite(a)) {
                        throw std::invalid_argument("quantum measurement angle must be finite");
                    }
                }
            },
            [](const PerfectPR &) {},
            [](const NoisyPR &m) {
                if (!(m.p >= 0.0 && m.p <= 1.0)) {
                    throw std::invalid_argument("noisy PR success probability must lie in [0, 1]");
                }
            },
        },
        model);
}

double JointDistribution::total() const {
    return probability[0] + probability[1] + probability[2] + probability[3];
}

double JointDistribution::xor_probability(bool parity) const {
    return parity ? probability[1] + probability[2] : probability[0] + probability[3];
}

JointDistribution joint_distribution(const CorrelationModel &model, BoxInput input) {
    const bool target = input.x && input.y;
    return std::visit(
        overloaded{
            [&](const LocalDeterministic &m) {
                JointDistribution d;
                BoxOutput out = m.respond(input);
                d.probability[2 * unsigned(out.alpha) + unsigned(out.beta)] = 1.0;
                return d;
            },
            [&](const SharedRandomness &m) {
                JointDistribution d;
                for (const auto &[weight, strategy] : m.mixture) {
                    BoxOutput out = strategy.respond(input);
                    d.probability[2 * unsigned(out.alpha) + unsigned(out.beta)] += weight;
                }
                return d;
            },
            [&](const Quantum &m) {
                double c = std::cos(m.alice_angles[input.x] - m.bob_angles[input.y]);
                double same = (1 + c) / 4;
                double differ = (1 - c) / 4;
                return JointDistribution{{same, differ, differ, same}};
            },
            [&](const PerfectPR &) {
                return target ? JointDistribution{{0.0, 0.5, 0.5, 0.0}} : JointDistribution{{0.5, 0.0, 0.0, 0.5}};
            },
            [&](const NoisyPR &m) {
                double hit = m.p / 2;
                double miss = (1 - m.p) / 2;
                return target ? JointDistribution{{miss, hit, hit, miss}} : JointDistribution{{hit, miss, miss, hit}};
            },
        },
        model);
}

BoxOutput sample_box(const CorrelationModel &model, BoxInput input, Rng &rng) {
    const bool target = input.x && input.y;
    return std::visit(
        overloaded{
            [&](const LocalDeterministic &m) { return m.respond(input); },
            [&](const SharedRandomness &m) {
                double u = rng.uniform();
                for (const auto &[weight, strategy] : m.mixture) {
                    if (u < weight) {
                        return strategy.respond(input);
                    }
                    u -= weight;
                }
                return m.mixture.back().second.respond(input);
            },
            [&](const Quantum &) {
                unsigned k = sample_index(joint_distribution(model, input).probability, rng);
                return BoxOutput{(k & 2) != 0, (k & 1) != 0};
            },
            [&](const PerfectPR &) {
                bool alpha = rng.bit();
                return BoxOutput{alpha, alpha != target};
            },
            [&](const NoisyPR &m) {
                bool alpha = rng.bit();
                bool error = !rng.bernoulli(m.p);
                return BoxOutput{alpha, (alpha != target) != error};
            },
        },
        model);
}

double marginal_distribution(const CorrelationModel &model, Site site, bool own_input, bool other_input) {
    BoxInput input = site == Site::Alice ? BoxInput{own_input, other_input} : BoxInput{other_input, own_input};
    JointDistribution d = joint_distribution(model, input);
    return site == Site::Alice ? d(true, false) + d(true, true) : d(false, true) + d(true, true);
}

int local_score(const LocalDeterministic &strategy) {
    int wins = 0;
    for (BoxInput in : kAllSettings) {
        wins += chsh_wins(in, strategy.respond(in));
    }
    return wins;
}

double chsh_score_exact(const CorrelationModel &model) {
    return std::visit(
        overloaded{
            [](const LocalDeterministic &m) { return double(local_score(m)); },
            [](const SharedRandomness &m) {
                double score = 0;
                for (const auto &[weight, strategy] : m.mixture) {
                    score += weight * local_score(strategy);
                }
                return score;
            },
            [&](const Quantum &) {
                double score = 0;
                for (BoxInput in : kAllSettings) {
                    score += joint_distribution(model, in).xor_probability(in.x && in.y);
                }
                return score;
            },
            [](const PerfectPR &) { return 4.0; },
            [](const NoisyPR &m) { return 4.0 * m.p; },
        },
        model);
}

std::vector<LocalStrategyScore> enumerate_local_strategies() {
    std::vector<LocalStrategyScore> result;
    result.reserve(16);
    for (unsigned mask = 0; mask < 16; mask++) {
        auto strategy = LocalDeterministic::from_mask(mask);
        result.push_back({strategy, local_score(strategy)});
    }
    return result;
}

}  // namespace nlbox
