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

#ifndef NLBOX_PROTOCOL_H
#define NLBOX_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nlbox/boolfn.h"
#include "nlbox/correlations.h"
#include "nlbox/rng.h"

namespace nlbox {

enum class Direction : std::uint8_t { AliceToBob, BobToAlice };

struct Message {
    Direction direction;
    Bits payload;
};

/// Append-only log of everything sent over the channel.
class Transcript {
   public:
    void send(Direction direction, Bits payload);

    std::span<const Message> messages() const {
        return messages_;
    }
    std::size_t bits_communicated() const {
        return bits_;
    }

   private:
    std::vector<Message> messages_;
    std::size_t bits_ = 0;
};

/// A pool of pre-shared, single-use boxes.
///
/// Boxes are handed out in contiguous blocks by reserve(). Each site reaches the pool only
/// through its own End and may measure each reserved box once. The first end to measure
/// a box draws from its marginal law; the second draws conditioned on the first outcome,
/// so the joint law is reproduced whatever order the sites act in. This relies on the
/// model being non-signalling, which every CorrelationModel is.
class BoxPool {
   public:
    /// Throws std::invalid_argument if the model is invalid.
    BoxPool(CorrelationModel model, std::size_t capacity);

    const CorrelationModel &model() const {
        return model_;
    }
    std::size_t capacity() const {
        return boxes_.size();
    }
    std::size_t consumed() const {
        return consumed_;
    }
    std::size_t remaining() const {
        return capacity() - consumed_;
    }

    /// Claims the next `count` boxes and returns the index of the first.
    /// Throws ResourceError when fewer than `count` remain.
    std::size_t reserve(std::size_t count);

    class End {
       public:
        Site site() const {
            return site_;
        }
        /// Feeds `input` into box `index` at this site and returns the outcome. Throws
        /// std::out_of_range for an unreserved box and BoxReuseError if this end of the
        /// box was already measured.
        bool measure(std::size_t index, bool input, Rng &rng);

       private:
        friend class BoxPool;
        End(BoxPool &pool, Site site) : pool_(&pool), site_(site) {
        }
        BoxPool *pool_;
        Site site_;
    };

    End alice_end() {
        return End(*this, Site::Alice);
    }
    End bob_end() {
        return End(*this, Site::Bob);
    }

   private:
    struct BoxState {
        bool measured[2] = {false, false};
        bool input[2] = {false, false};
        bool output[2] = {false, false};
    };

    bool measure(Site site, std::size_t index, bool input, Rng &rng);

    CorrelationModel model_;
    std::vector<BoxState> boxes_;
    std::size_t consumed_ = 0;
};

/// One party of the one-bit protocol. It sees only its own box inputs (computed from its
/// private data) and its own end of the pool.
class Party {
   public:
    Party(BoxPool::End end, std::size_t first_box, std::vector<bool> box_inputs);

    /// Measures each assigned box once and returns the XOR of the outcomes.
    bool measure_all(Rng &rng);

   private:
    BoxPool::End end_;
    std::size_t first_box_;
    std::vector<bool> box_inputs_;
};

struct ProtocolOptions {
    /// Alice returns her result to Bob so both learn it, costing a second bit.
    bool both_learn = false;
};

struct ProtocolResult {
    bool output = false;
    Transcript transcript;
    std::size_t boxes_consumed = 0;
};

/// One-bit protocol for the inner product: box i gets (x_i, y_i), Bob sends the XOR of his
/// outcomes, Alice outputs it XOR the XOR of hers. Throws std::invalid_argument for empty or
/// mismatched inputs and ResourceError if the pool has fewer than |x| boxes left.
ProtocolResult run_ip_protocol(const Bits &x, const Bits &y, BoxPool &pool, Rng &rng, ProtocolOptions options = {});

/// Same protocol on the decomposed function: box i gets (P_i(x), Q_i(y)). Uses 2^n boxes.
ProtocolResult run_general_protocol(
    const BipartiteDecomposition &decomposition,
    const Bits &x,
    const Bits &y,
    BoxPool &pool,
    Rng &rng,
    ProtocolOptions options = {});

/// Bob sends all of y; Alice looks up f(x, y). tt must have 2|x| variables.
ProtocolResult run_baseline_protocol(const TruthTable &tt, const Bits &x, const Bits &y);

inline constexpr unsigned kMaxVerifyPartyVars = 6;

struct VerifyReport {
    unsigned n = 0;
    std::uint64_t pairs = 0;
    std::uint64_t trials_per_pair = 0;
    std::uint64_t runs = 0;
    std::uint64_t errors = 0;
    std::size_t boxes_per_run = 0;
    /// Error count for each input pair, indexed by bipartite_index(x, y, n).
    std::vector<std::uint64_t> pair_errors;
    /// Bits communicated per run -> number of runs.
    std::map<std::size_t, std::uint64_t> bits_histogram;

    double pair_error_frequency(std::uint64_t pair) const {
        return double(pair_errors[pair]) / double(trials_per_pair);
    }
};

/// Runs the general protocol `trials_per_pair` times on every input pair of the 2n-variable
/// function tt. Work unit (pair, trial) draws from Rng::derive(seed, pair * trials + trial),
/// so the report is independent of the worker count. Throws ResourceError for n above
/// kMaxVerifyPartyVars.
VerifyReport verify_exhaustive(
    const TruthTable &tt,
    unsigned n,
    const CorrelationModel &model,
    std::uint64_t trials_per_pair,
    RngSeed seed,
    unsigned workers = 0);

}  // namespace nlbox

#endif
