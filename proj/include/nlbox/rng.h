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

#ifndef NLBOX_RNG_H
#define NLBOX_RNG_H

#include <cstdint>
#include <limits>

namespace nlbox {

/// A 64-bit experiment seed.
struct RngSeed {
    std::uint64_t value = 0;

    constexpr bool operator==(const RngSeed &) const = default;
};

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Small splittable random stream (SplitMix64).
///
/// Streams are cheap to construct, so every work unit of an experiment gets
/// its own stream via `Rng::derive(seed, unit_index)`. Results then depend only
/// on the seed and the unit index, never on how units are scheduled.
///
/// Satisfies UniformRandomBitGenerator. All derived quantities (bits, unit
/// doubles, Bernoulli draws) are computed here rather than through
/// <random> distributions so sample sequences are identical across
/// standard library implementations.
class Rng {
   public:
    using result_type = std::uint64_t;

    constexpr explicit Rng(RngSeed seed) : state_(mix64(seed.value)) {
    }

    static constexpr Rng derive(RngSeed seed, std::uint64_t stream_index) {
        return Rng(RngSeed{mix64(seed.value) ^ mix64(stream_index ^ 0xD1B54A32D192ED03ULL)});
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    constexpr bool bit() {
        return ((*this)() >> 63) != 0;
    }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    constexpr bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, 2^bits), bits <= 64.
    constexpr std::uint64_t bits(unsigned count) {
        if (count == 0) {
            return 0;
        }
        return (*this)() >> (64 - count);
    }

   private:
    std::uint64_t state_;
};

}  // namespace nlbox

#endif
