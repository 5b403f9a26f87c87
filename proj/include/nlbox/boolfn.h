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

#ifndef NLBOX_BOOLFN_H
#define NLBOX_BOOLFN_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlbox/rng.h"

namespace nlbox {

// Variable z_j (1-based) contributes bit 2^(j-1) to a truth-table index, so z_1 is the
// least significant. A bipartite function over 2n variables puts Alice's x_1..x_n in
// z_1..z_n and Bob's y_1..y_n in z_{n+1}..z_{2n}: index = x_index + 2^n * y_index.

inline constexpr unsigned kMaxTableVars = 24;
inline constexpr unsigned kMaxPartyVars = 12;

/// Bit string; element j holds variable j + 1.
using Bits = std::vector<bool>;

std::uint64_t index_of(const Bits &bits);
Bits bits_of(std::uint64_t index, unsigned length);

constexpr std::uint64_t bipartite_index(std::uint64_t x_index, std::uint64_t y_index, unsigned n) {
    return x_index | (y_index << n);
}

/// Complete value table of a Boolean function of 1..24 variables, packed 64 entries per word.
class TruthTable {
   public:
    /// All-zero table. Throws std::invalid_argument for num_vars == 0 and ResourceError above the cap.
    explicit TruthTable(unsigned num_vars);

    template <class Fn>
    static TruthTable from_function(unsigned num_vars, Fn &&fn) {
        TruthTable tt(num_vars);
        for (std::uint64_t k = 0; k < tt.size(); k++) {
            if (fn(k)) {
                tt.set(k, true);
            }
        }
        return tt;
    }

    unsigned num_vars() const {
        return num_vars_;
    }
    std::uint64_t size() const {
        return std::uint64_t{1} << num_vars_;
    }

    bool get(std::uint64_t index) const {
        return (words_[index >> 6] >> (index & 63)) & 1;
    }
    void set(std::uint64_t index, bool value) {
        std::uint64_t bit = std::uint64_t{1} << (index & 63);
        if (value) {
            words_[index >> 6] |= bit;
        } else {
            words_[index >> 6] &= ~bit;
        }
    }
    bool operator[](std::uint64_t index) const {
        return get(index);
    }

    std::span<const std::uint64_t> words() const {
        return words_;
    }
    std::span<std::uint64_t> words() {
        return words_;
    }

    std::uint64_t count_ones() const;

    TruthTable &operator^=(const TruthTable &other);
    friend TruthTable operator^(TruthTable a, const TruthTable &b) {
        return a ^= b;
    }
    bool operator==(const TruthTable &) const = default;

   private:
    unsigned num_vars_;
    std::vector<std::uint64_t> words_;
};

/// In-place XOR (Moebius) butterfly over GF(2). It is its own inverse: it maps values to
/// ANF coefficients and coefficients back to values.
void moebius_transform(TruthTable &table);

/// Mod-2 polynomial as a set of monomials. Bit j of a monomial mask means z_{j+1} is a
/// factor; the empty mask is the constant 1. Monomials are kept sorted and unique.
class AnfPolynomial {
   public:
    /// The zero polynomial.
    explicit AnfPolynomial(unsigned num_vars);
    /// Throws std::invalid_argument on duplicate or out-of-range monomials.
    AnfPolynomial(unsigned num_vars, std::vector<std::uint32_t> monomials);

    unsigned num_vars() const {
        return num_vars_;
    }
    std::span<const std::uint32_t> monomials() const {
        return monomials_;
    }
    bool is_zero() const {
        return monomials_.empty();
    }

    /// Value at the assignment whose bit j is z_{j+1}.
    bool evaluate(std::uint32_t assignment) const {
        bool value = false;
        for (std::uint32_t m : monomials_) {
            value ^= (m & assignment) == m;
        }
        return value;
    }

    bool operator==(const AnfPolynomial &) const = default;

   private:
    unsigned num_vars_;
    std::vector<std::uint32_t> monomials_;
};

AnfPolynomial anf_from_truth_table(const TruthTable &tt);
TruthTable truth_table_from_anf(const AnfPolynomial &poly);

/// Throws std::invalid_argument if assignment.size() != poly.num_vars().
bool evaluate_anf(const AnfPolynomial &poly, const Bits &assignment);

/// Renders e.g. "1 + x1 + x2 + x1x2" using the given variable prefix. The zero polynomial is "0".
std::string format_anf(const AnfPolynomial &poly, std::string_view prefix = "z");

/// One term P(x) * Q(y) of a bipartite decomposition; Q is the product of the y_j with bit
/// j - 1 set in bob_monomial.
struct DecompositionTerm {
    AnfPolynomial alice_poly;
    std::uint32_t bob_monomial = 0;

    bool operator==(const DecompositionTerm &) const = default;
};

/// f(x, y) = XOR over i of P_i(x) * Q_i(y), one term per subset of Bob's variables, with
/// terms[i].bob_monomial == i. Zero P_i are kept.
struct BipartiteDecomposition {
    unsigned n = 0;
    std::vector<DecompositionTerm> terms;

    bool evaluate(std::uint32_t x_index, std::uint32_t y_index) const;
};

/// tt must have 2n variables (x first, then y). Throws std::invalid_argument for an odd
/// variable count or a mismatched n, ResourceError for n > kMaxPartyVars.
BipartiteDecomposition decompose_bipartite(const TruthTable &tt, unsigned n);

/// Drops terms whose P_i is the zero polynomial. The result still evaluates to f but uses
/// fewer boxes; term order is preserved.
BipartiteDecomposition prune_zero_terms(BipartiteDecomposition decomposition);

enum class BuiltinFunction { InnerProduct, Equality, Inequality, AndOfPairs, OrOfPairs, Majority };

/// Accepts "ip", "eq", "neq", "and-pairs", "or-pairs", "maj" (case-insensitive).
BuiltinFunction parse_builtin_function(std::string_view name);
std::string_view builtin_function_name(BuiltinFunction fn);

/// Table over 2n variables:
///   InnerProduct  XOR_i x_i y_i
///   Equality      x == y
///   Inequality    x != y
///   AndOfPairs    AND_i (x_i y_i)
///   OrOfPairs     OR_i (x_i y_i)
///   Majority      more than n of the 2n bits are 1
/// Throws std::invalid_argument for n == 0 and ResourceError for n > kMaxPartyVars.
TruthTable builtin_function(BuiltinFunction fn, unsigned n);

/// Uniformly random table over 2n variables.
TruthTable random_function(unsigned n, RngSeed seed);

}  // namespace nlbox

#endif
