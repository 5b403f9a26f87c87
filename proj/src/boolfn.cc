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

#include "nlbox/boolfn.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

#include "nlbox/errors.h"

namespace nlbox {

namespace {

// Positions whose index has bit j clear, for j < 6.
constexpr std::uint64_t kVarClearMask[6] = {
    0x5555555555555555ULL,
    0x3333333333333333ULL,
    0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL,
    0x0000FFFF0000FFFFULL,
    0x00000000FFFFFFFFULL,
};

std::uint64_t used_bits_mask(unsigned num_vars) {
    return num_vars >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << num_vars)) - 1;
}

void check_party_size(unsigned n) {
    if (n == 0) {
        throw std::invalid_argument("per-party input length must be at least 1");
    }
    if (n > kMaxPartyVars) {
        throw ResourceError(
            "per-party input length " + std::to_string(n) + " exceeds the cap of " + std::to_string(kMaxPartyVars));
    }
}

}  // namespace

std::uint64_t index_of(const Bits &bits) {
    if (bits.size() > 64) {
        throw std::invalid_argument("bit string longer than 64");
    }
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < bits.size(); j++) {
        index |= std::uint64_t{bits[j]} << j;
    }
    return index;
}

Bits bits_of(std::uint64_t index, unsigned length) {
    Bits bits(length);
    for (unsigned j = 0; j < length; j++) {
        bits[j] = (index >> j) & 1;
    }
    return bits;
}

TruthTable::TruthTable(unsigned num_vars) : num_vars_(num_vars) {
    if (num_vars == 0) {
        throw std::invalid_argument("truth table needs at least one variable");
    }
    if (num_vars > kMaxTableVars) {
        throw ResourceError(
            "truth table over " + std::to_string(num_vars) + " variables exceeds the cap of " +
            std::to_string(kMaxTableVars));
    }
    words_.assign(num_vars >= 6 ? std::size_t{1} << (num_vars - 6) : 1, 0);
}

std::uint64_t TruthTable::count_ones() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

TruthTable &TruthTable::operator^=(const TruthTable &other) {
    if (other.num_vars_ != num_vars_) {
        throw std::invalid_argument("truth tables differ in variable count");
    }
    for (std::size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

void moebius_transform(TruthTable &table) {
    auto words = table.words();
    unsigned in_word = std::min(table.num_vars(), 6u);
    for (auto &w : words) {
        for (unsigned j = 0; j < in_word; j++) {
            w ^= (w & kVarClearMask[j]) << (1u << j);
        }
    }
    for (unsigned j = 6; j < table.num_vars(); j++) {
        std::size_t stride = std::size_t{1} << (j - 6);
        for (std::size_t base = 0; base < words.size(); base += 2 * stride) {
            for (std::size_t k = base; k < base + stride; k++) {
                words[k + stride] ^= words[k];
            }
        }
    }
}

AnfPolynomial::AnfPolynomial(unsigned num_vars) : num_vars_(num_vars) {
    if (num_vars > kMaxTableVars) {
        throw ResourceError("polynomial over too many variables");
    }
}

AnfPolynomial::AnfPolynomial(unsigned num_vars, std::vector<std::uint32_t> monomials)
    : num_vars_(num_vars), monomials_(std::move(monomials)) {
    if (num_vars > kMaxTableVars) {
        throw ResourceError("polynomial over too many variables");
    }
    std::sort(monomials_.begin(), monomials_.end());
    if (std::adjacent_find(monomials_.begin(), monomials_.end()) != monomials_.end()) {
        throw std::invalid_argument("duplicate monomial");
    }
    if (!monomials_.empty() && (monomials_.back() >> num_vars) != 0) {
        throw std::invalid_argument(
            "monomial " + std::to_string(monomials_.back()) + " uses a variable beyond z" + std::to_string(num_vars));
    }
}

AnfPolynomial anf_from_truth_table(const TruthTable &tt) {
    TruthTable coefficients = tt;
    moebius_transform(coefficients);
    std::vector<std::uint32_t> monomials;
    monomials.reserve(coefficients.count_ones());
    auto words = coefficients.words();
    for (std::size_t k = 0; k < words.size(); k++) {
        for (std::uint64_t w = words[k]; w != 0; w &= w - 1) {
            monomials.push_back(static_cast<std::uint32_t>(64 * k + std::countr_zero(w)));
        }
    }
    return AnfPolynomial(tt.num_vars(), std::move(monomials));
}

TruthTable truth_table_from_anf(const AnfPolynomial &poly) {
    TruthTable table(poly.num_vars());
    for (std::uint32_t m : poly.monomials()) {
        table.set(m, true);
    }
    moebius_transform(table);
    return table;
}

bool evaluate_anf(const AnfPolynomial &poly, const Bits &assignment) {
    if (assignment.size() != poly.num_vars()) {
        throw std::invalid_argument(
            "assignment has " + std::to_string(assignment.size()) + " bits, polynomial has " +
            std::to_string(poly.num_vars()) + " variables");
    }
    return poly.evaluate(static_cast<std::uint32_t>(index_of(assignment)));
}

std::string format_anf(const AnfPolynomial &poly, std::string_view prefix) {
    if (poly.is_zero()) {
        return "0";
    }
    std::string out;
    for (std::uint32_t m : poly.monomials()) {
        if (!out.empty()) {
            out += " + ";
        }
        if (m == 0) {
            out += "1";
            continue;
        }
        for (unsigned j = 0; j < poly.num_vars(); j++) {
            if ((m >> j) & 1) {
                out += prefix;
                out += std::to_string(j + 1);
            }
        }
    }
    return out;
}

bool BipartiteDecomposition::evaluate(std::uint32_t x_index, std::uint32_t y_index) const {
    bool value = false;
    for (const auto &term : terms) {
        if ((term.bob_monomial & y_index) == term.bob_monomial) {
            value ^= term.alice_poly.evaluate(x_index);
        }
    }
    return value;
}

BipartiteDecomposition decompose_bipartite(const TruthTable &tt, unsigned n) {
    if (tt.num_vars() % 2 != 0) {
        throw std::invalid_argument("bipartite function needs an even number of variables");
    }
    if (tt.num_vars() != 2 * n) {
        throw std::invalid_argument(
            "table has " + std::to_string(tt.num_vars()) + " variables, expected 2n = " + std::to_string(2 * n));
    }
    check_party_size(n);

    AnfPolynomial full = anf_from_truth_table(tt);
    const std::uint32_t x_mask = (std::uint32_t{1} << n) - 1;
    std::vector<std::vector<std::uint32_t>> alice_parts(std::size_t{1} << n);
    for (std::uint32_t m : full.monomials()) {
        alice_parts[m >> n].push_back(m & x_mask);
    }

    BipartiteDecomposition result;
    result.n = n;
    result.terms.reserve(alice_parts.size());
    for (std::uint32_t s = 0; s < alice_parts.size(); s++) {
        result.terms.push_back({AnfPolynomial(n, std::move(alice_parts[s])), s});
    }
    return result;
}

BipartiteDecomposition prune_zero_terms(BipartiteDecomposition decomposition) {
    std::erase_if(decomposition.terms, [](const DecompositionTerm &t) { return t.alice_poly.is_zero(); });
    return decomposition;
}

BuiltinFunction parse_builtin_function(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto fn : {BuiltinFunction::InnerProduct, BuiltinFunction::Equality, BuiltinFunction::Inequality,
                    BuiltinFunction::AndOfPairs, BuiltinFunction::OrOfPairs, BuiltinFunction::Majority}) {
        if (lower == builtin_function_name(fn)) {
            return fn;
        }
    }
    throw std::invalid_argument("unknown function name '" + std::string(name) + "'");
}

std::string_view builtin_function_name(BuiltinFunction fn) {
    switch (fn) {
        case BuiltinFunction::InnerProduct:
            return "ip";
        case BuiltinFunction::Equality:
            return "eq";
        case BuiltinFunction::Inequality:
            return "neq";
        case BuiltinFunction::AndOfPairs:
            return "and-pairs";
        case BuiltinFunction::OrOfPairs:
            return "or-pairs";
        case BuiltinFunction::Majority:
            return "maj";
    }
    return "?";
}

TruthTable builtin_function(BuiltinFunction fn, unsigned n) {
    check_party_size(n);
    const std::uint64_t x_mask = (std::uint64_t{1} << n) - 1;
    return TruthTable::from_function(2 * n, [&](std::uint64_t k) {
        std::uint64_t x = k & x_mask;
        std::uint64_t y = k >> n;
        switch (fn) {
            case BuiltinFunction::InnerProduct:
                return (std::popcount(x & y) & 1) != 0;
            case BuiltinFunction::Equality:
                return x == y;
            case BuiltinFunction::Inequality:
                return x != y;
            case BuiltinFunction::AndOfPairs:
                return (x & y) == x_mask;
            case BuiltinFunction::OrOfPairs:
                return (x & y) != 0;
            case BuiltinFunction::Majority:
                return unsigned(std::popcount(k)) > n;
        }
        return false;
    });
}

TruthTable random_function(unsigned n, RngSeed seed) {
    check_party_size(n);
    TruthTable tt(2 * n);
    Rng rng(seed);
    const std::uint64_t used = used_bits_mask(2 * n);
    for (auto &w : tt.words()) {
        w = rng() & used;
    }
    return tt;
}

}  // namespace nlbox
