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

#include "nlbox/protocol.h"

#include <stdexcept>
#include <string>

#include "nlbox/errors.h"
#include "nlbox/parallel.h"

namespace nlbox {

namespace {

void check_inputs(const Bits &x, const Bits &y) {
    if (x.empty()) {
        throw std::invalid_argument("inputs must have at least one bit");
    }
    if (x.size() != y.size()) {
        throw std::invalid_argument(
            "input length mismatch: |x| = " + std::to_string(x.size()) + ", |y| = " + std::to_string(y.size()));
    }
}

// Bob measures and sends one bit; Alice measures and concludes.
ProtocolResult run_one_bit(Party &alice, Party &bob, std::size_t boxes, Rng &rng, ProtocolOptions options) {
    ProtocolResult result;
    result.boxes_consumed = boxes;

    bool alice_parity = alice.measure_all(rng);
    bool message = bob.measure_all(rng);
    result.transcript.send(Direction::BobToAlice, Bits{message});

    result.output = message != alice_parity;
    if (options.both_learn) {
        result.transcript.send(Direction::AliceToBob, Bits{result.output});
    }
    return result;
}

}  // namespace

void Transcript::send(Direction direction, Bits payload) {
    bits_ += payload.size();
    messages_.push_back({direction, std::move(payload)});
}

BoxPool::BoxPool(CorrelationModel model, std::size_t capacity) : model_(std::move(model)), boxes_(capacity) {
    validate(model_);
}

std::size_t BoxPool::reserve(std::size_t count) {
    if (count > remaining()) {
        throw ResourceError(
            "box pool exhausted: need " + std::to_string(count) + ", " + std::to_string(remaining()) + " left");
    }
    std::size_t first = consumed_;
    consumed_ += count;
    return first;
}

bool BoxPool::End::measure(std::size_t index, bool input, Rng &rng) {
    return pool_->measure(site_, index, input, rng);
}

bool BoxPool::measure(Site site, std::size_t index, bool input, Rng &rng) {
    if (index >= consumed_) {
        throw std::out_of_range("box " + std::to_string(index) + " was not reserved");
    }
    BoxState &box = boxes_[index];
    const unsigned self = site == Site::Alice ? 0 : 1;
    const unsigned other = 1 - self;
    if (box.measured[self]) {
        throw BoxReuseError(
            std::string(site == Site::Alice ? "Alice" : "Bob") + " already used box " + std::to_string(index));
    }

    bool outcome;
    if (!box.measured[other]) {
        // Non-signalling: the marginal does not depend on the other setting, so any value works.
        outcome = rng.bernoulli(marginal_distribution(model_, site, input, false));
    } else {
        BoxInput setting = site == Site::Alice ? BoxInput{input, box.input[other]} : BoxInput{box.input[other], input};
        JointDistribution joint = joint_distribution(model_, setting);
        bool seen = box.output[other];
        double p_zero = site == Site::Alice ? joint(false, seen) : joint(seen, false);
        double p_one = site == Site::Alice ? joint(true, seen) : joint(seen, true);
        outcome = rng.bernoulli(p_one / (p_zero + p_one));
    }

    box.measured[self] = true;
    box.input[self] = input;
    box.output[self] = outcome;
    return outcome;
}

Party::Party(BoxPool::End end, std::size_t first_box, std::vector<bool> box_inputs)
    : end_(end), first_box_(first_box), box_inputs_(std::move(box_inputs)) {
}

bool Party::measure_all(Rng &rng) {
    bool parity = false;
    for (std::size_t i = 0; i < box_inputs_.size(); i++) {
        parity ^= end_.measure(first_box_ + i, box_inputs_[i], rng);
    }
    return parity;
}

ProtocolResult run_ip_protocol(const Bits &x, const Bits &y, BoxPool &pool, Rng &rng, ProtocolOptions options) {
    check_inputs(x, y);
    const std::size_t first = pool.reserve(x.size());
    Party alice(pool.alice_end(), first, x);
    Party bob(pool.bob_end(), first, y);
    return run_one_bit(alice, bob, x.size(), rng, options);
}

ProtocolResult run_general_protocol(
    const BipartiteDecomposition &decomposition,
    const Bits &x,
    const Bits &y,
    BoxPool &pool,
    Rng &rng,
    ProtocolOptions options) {
    check_inputs(x, y);
    if (x.size() != decomposition.n) {
        throw std::invalid_argument(
            "inputs have " + std::to_string(x.size()) + " bits, decomposition expects " +
            std::to_string(decomposition.n));
    }
    const std::size_t boxes = decomposition.terms.size();
    const std::size_t first = pool.reserve(boxes);

    // Each side derives its box inputs from its own data and the shared term order.
    std::vector<bool> alice_inputs(boxes);
    {
        const auto x_index = static_cast<std::uint32_t>(index_of(x));
        for (std::size_t i = 0; i < boxes; i++) {
            alice_inputs[i] = decomposition.terms[i].alice_poly.evaluate(x_index);
        }
    }
    std::vector<bool> bob_inputs(boxes);
    {
        const auto y_index = static_cast<std::uint32_t>(index_of(y));
        for (std::size_t i = 0; i < boxes; i++) {
            std::uint32_t s = decomposition.terms[i].bob_monomial;
            bob_inputs[i] = (s & y_index) == s;
        }
    }

    Party alice(pool.alice_end(), first, std::move(alice_inputs));
    Party bob(pool.bob_end(), first, std::move(bob_inputs));
    return run_one_bit(alice, bob, boxes, rng, options);
}

ProtocolResult run_baseline_protocol(const TruthTable &tt, const Bits &x, const Bits &y) {
    check_inputs(x, y);
    if (tt.num_vars() != 2 * x.size()) {
        throw std::invalid_argument(
            "function has " + std::to_string(tt.num_vars()) + " variables, inputs give " +
            std::to_string(2 * x.size()));
    }
    ProtocolResult result;
    result.transcript.send(Direction::BobToAlice, y);
    const Bits &received = result.transcript.messages().back().payload;
    result.output = tt[bipartite_index(index_of(x), index_of(received), static_cast<unsigned>(x.size()))];
    return result;
}

VerifyReport verify_exhaustive(
    const TruthTable &tt,
    unsigned n,
    const CorrelationModel &model,
    std::uint64_t trials_per_pair,
    RngSeed seed,
    unsigned workers) {
    if (n > kMaxVerifyPartyVars) {
        throw ResourceError(
            "exhaustive verification is capped at n = " + std::to_string(kMaxVerifyPartyVars) + ", got " +
            std::to_string(n));
    }
    if (trials_per_pair == 0) {
        throw std::invalid_argument("trials per pair must be at least 1");
    }
    validate(model);
    const BipartiteDecomposition decomposition = decompose_bipartite(tt, n);

    VerifyReport report;
    report.n = n;
    report.pairs = std::uint64_t{1} << (2 * n);
    report.trials_per_pair = trials_per_pair;
    report.runs = report.pairs * trials_per_pair;
    report.boxes_per_run = decomposition.terms.size();
    report.pair_errors.assign(report.pairs, 0);

    const std::uint64_t x_mask = (std::uint64_t{1} << n) - 1;
    std::vector<std::map<std::size_t, std::uint64_t>> histograms(workers == 0 ? default_workers() : workers);

    // Slices cover disjoint pairs, so pair_errors needs no synchronization.
    parallel_slices(report.pairs, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned slice) {
        auto &histogram = histograms[slice];
        for (std::uint64_t pair = begin; pair < end; pair++) {
            const Bits x = bits_of(pair & x_mask, n);
            const Bits y = bits_of(pair >> n, n);
            const bool expected = tt[pair];
            for (std::uint64_t t = 0; t < trials_per_pair; t++) {
                Rng rng = Rng::derive(seed, pair * trials_per_pair + t);
                BoxPool pool(model, decomposition.terms.size());
                ProtocolResult r = run_general_protocol(decomposition, x, y, pool, rng);
                report.pair_errors[pair] += r.output != expected;
                histogram[r.transcript.bits_communicated()]++;
            }
        }
    });

    for (const auto &h : histograms) {
        for (const auto &[bits, count] : h) {
            report.bits_histogram[bits] += count;
        }
    }
    for (std::uint64_t e : report.pair_errors) {
        report.errors += e;
    }
    return report;
}

}  // namespace nlbox
