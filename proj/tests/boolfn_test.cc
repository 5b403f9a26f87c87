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

#include "gtest/gtest.h"

#include "nlbox/errors.h"

using namespace nlbox;

namespace {

TruthTable table_of(unsigned m, std::initializer_list<int> values) {
    TruthTable tt(m);
    std::uint64_t k = 0;
    for (int v : values) {
        tt.set(k++, v != 0);
    }
    return tt;
}

TruthTable random_table(unsigned m, Rng &rng) {
    return TruthTable::from_function(m, [&](std::uint64_t) { return rng.bit(); });
}

// Coefficient of monomial M is the XOR of f over all sub-assignments of M.
std::vector<std::uint32_t> naive_anf(const TruthTable &tt) {
    std::vector<std::uint32_t> monomials;
    for (std::uint32_t m = 0; m < tt.size(); m++) {
        bool c = false;
        for (std::uint32_t s = m;; s = (s - 1) & m) {
            c ^= tt[s];
            if (s == 0) {
                break;
            }
        }
        if (c) {
            monomials.push_back(m);
        }
    }
    return monomials;
}

std::vector<std::uint32_t> monomials_of(const AnfPolynomial &p) {
    return {p.monomials().begin(), p.monomials().end()};
}

}  // namespace

TEST(boolfn, anf_of_primitives) {
    EXPECT_EQ(monomials_of(anf_from_truth_table(table_of(2, {0, 1, 1, 0}))), (std::vector<std::uint32_t>{1, 2}));
    // (x <=> y) == 1 + x + y
    EXPECT_EQ(monomials_of(anf_from_truth_table(table_of(2, {1, 0, 0, 1}))), (std::vector<std::uint32_t>{0, 1, 2}));
    // x AND y == x y
    EXPECT_EQ(monomials_of(anf_from_truth_table(table_of(2, {0, 0, 0, 1}))), (std::vector<std::uint32_t>{3}));
    // x OR y == x + y + x y
    EXPECT_EQ(monomials_of(anf_from_truth_table(table_of(2, {0, 1, 1, 1}))), (std::vector<std::uint32_t>{1, 2, 3}));
    // NOT x == 1 + x
    EXPECT_EQ(monomials_of(anf_from_truth_table(table_of(1, {1, 0}))), (std::vector<std::uint32_t>{0, 1}));
}

TEST(boolfn, truth_table_from_anf_basics) {
    EXPECT_EQ(truth_table_from_anf(AnfPolynomial(3)), TruthTable(3));
    TruthTable ones = truth_table_from_anf(AnfPolynomial(3, {0}));
    EXPECT_EQ(ones.count_ones(), 8u);
    EXPECT_EQ(truth_table_from_anf(AnfPolynomial(2, {1, 2})), table_of(2, {0, 1, 1, 0}));
}

TEST(boolfn, evaluate_anf) {
    // 1 + x1 + y1 with z1 = x1, z2 = y1.
    AnfPolynomial eq1(2, {0, 1, 2});
    EXPECT_FALSE(evaluate_anf(eq1, Bits{true, false}));
    EXPECT_TRUE(evaluate_anf(eq1, Bits{true, true}));

    AnfPolynomial eq2 = anf_from_truth_table(builtin_function(BuiltinFunction::Equality, 2));
    // x = 01, y = 01: x1 = 1, x2 = 0, y1 = 1, y2 = 0.
    EXPECT_TRUE(evaluate_anf(eq2, Bits{true, false, true, false}));
    EXPECT_FALSE(evaluate_anf(eq2, Bits{true, false, false, true}));

    EXPECT_THROW(evaluate_anf(eq2, Bits{true, false}), std::invalid_argument);
}

TEST(boolfn, evaluate_matches_inverse_transform) {
    Rng rng(RngSeed{11});
    for (int k = 0; k < 50; k++) {
        unsigned m = 1 + unsigned(rng.bits(3));
        std::vector<std::uint32_t> monomials;
        for (std::uint32_t mask = 0; mask < (1u << m); mask++) {
            if (rng.bit()) {
                monomials.push_back(mask);
            }
        }
        AnfPolynomial poly(m, monomials);
        TruthTable tt = truth_table_from_anf(poly);
        for (std::uint32_t z = 0; z < (1u << m); z++) {
            ASSERT_EQ(evaluate_anf(poly, bits_of(z, m)), tt[z]);
        }
    }
}

TEST(boolfn, transform_matches_naive_subset_sum) {
    Rng rng(RngSeed{12});
    for (unsigned m = 1; m <= 9; m++) {
        for (int k = 0; k < 5; k++) {
            TruthTable tt = random_table(m, rng);
            ASSERT_EQ(monomials_of(anf_from_truth_table(tt)), naive_anf(tt)) << "m = " << m;
        }
    }
}

TEST(boolfn, round_trip) {
    Rng rng(RngSeed{13});
    for (int k = 0; k < 300; k++) {
        unsigned m = 1 + unsigned(rng() % 12);
        TruthTable tt = random_table(m, rng);
        ASSERT_EQ(truth_table_from_anf(anf_from_truth_table(tt)), tt);
    }
}

TEST(boolfn, transform_is_linear) {
    Rng rng(RngSeed{14});
    for (int k = 0; k < 50; k++) {
        unsigned m = 1 + unsigned(rng() % 10);
        TruthTable a = random_table(m, rng);
        TruthTable b = random_table(m, rng);
        auto ma = monomials_of(anf_from_truth_table(a));
        auto mb = monomials_of(anf_from_truth_table(b));
        std::vector<std::uint32_t> sym;
        std::set_symmetric_difference(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(sym));
        EXPECT_EQ(monomials_of(anf_from_truth_table(a ^ b)), sym);
    }
}

TEST(boolfn, large_table_round_trip) {
    Rng rng(RngSeed{15});
    TruthTable tt = random_table(20, rng);
    ASSERT_EQ(truth_table_from_anf(anf_from_truth_table(tt)), tt);
}

TEST(boolfn, polynomial_validation) {
    EXPECT_THROW(AnfPolynomial(2, {1, 1}), std::invalid_argument);
    EXPECT_THROW(AnfPolynomial(2, {4}), std::invalid_argument);
    AnfPolynomial p(3, {5, 0, 2});
    EXPECT_EQ(monomials_of(p), (std::vector<std::uint32_t>{0, 2, 5}));
    EXPECT_EQ(format_anf(p, "x"), "1 + x2 + x1x3");
    EXPECT_EQ(format_anf(AnfPolynomial(2)), "0");
}

TEST(boolfn, table_size_caps) {
    EXPECT_THROW(TruthTable{0}, std::invalid_argument);
    EXPECT_THROW(TruthTable{kMaxTableVars + 1}, ResourceError);
    EXPECT_NO_THROW(TruthTable{kMaxTableVars});
}

TEST(boolfn, eq2_decomposition_matches_worked_expansion) {
    BipartiteDecomposition d = decompose_bipartite(builtin_function(BuiltinFunction::Equality, 2), 2);
    ASSERT_EQ(d.n, 2u);
    ASSERT_EQ(d.terms.size(), 4u);
    // (1 + x1 + x2 + x1x2) * 1
    EXPECT_EQ(d.terms[0].bob_monomial, 0u);
    EXPECT_EQ(format_anf(d.terms[0].alice_poly, "x"), "1 + x1 + x2 + x1x2");
    // (1 + x2) * y1
    EXPECT_EQ(d.terms[1].bob_monomial, 1u);
    EXPECT_EQ(format_anf(d.terms[1].alice_poly, "x"), "1 + x2");
    // (1 + x1) * y2
    EXPECT_EQ(d.terms[2].bob_monomial, 2u);
    EXPECT_EQ(format_anf(d.terms[2].alice_poly, "x"), "1 + x1");
    // 1 * y1y2
    EXPECT_EQ(d.terms[3].bob_monomial, 3u);
    EXPECT_EQ(format_anf(d.terms[3].alice_poly, "x"), "1");
}

TEST(boolfn, ip_decomposition_is_itself) {
    for (unsigned n = 1; n <= 6; n++) {
        BipartiteDecomposition d = decompose_bipartite(builtin_function(BuiltinFunction::InnerProduct, n), n);
        ASSERT_EQ(d.terms.size(), std::size_t{1} << n);
        for (std::uint32_t s = 0; s < d.terms.size(); s++) {
            EXPECT_EQ(d.terms[s].bob_monomial, s);
            if (std::popcount(s) == 1) {
                EXPECT_EQ(monomials_of(d.terms[s].alice_poly), (std::vector<std::uint32_t>{s}));
            } else {
                EXPECT_TRUE(d.terms[s].alice_poly.is_zero());
            }
        }
    }
}

TEST(boolfn, decomposition_soundness) {
    auto check = [](const TruthTable &tt, unsigned n) {
        BipartiteDecomposition d = decompose_bipartite(tt, n);
        ASSERT_EQ(d.terms.size(), std::size_t{1} << n);
        for (std::uint32_t s = 0; s < d.terms.size(); s++) {
            ASSERT_EQ(d.terms[s].bob_monomial, s);
        }
        for (std::uint32_t x = 0; x < (1u << n); x++) {
            for (std::uint32_t y = 0; y < (1u << n); y++) {
                bool sum = false;
                for (const auto &t : d.terms) {
                    bool q = (t.bob_monomial & y) == t.bob_monomial;
                    sum ^= t.alice_poly.evaluate(x) && q;
                }
                ASSERT_EQ(sum, tt[bipartite_index(x, y, n)]) << "x = " << x << " y = " << y;
                ASSERT_EQ(d.evaluate(x, y), sum);
            }
        }
    };
    for (auto fn : {BuiltinFunction::InnerProduct, BuiltinFunction::Equality, BuiltinFunction::Inequality,
                    BuiltinFunction::AndOfPairs, BuiltinFunction::OrOfPairs, BuiltinFunction::Majority}) {
        for (unsigned n = 1; n <= 4; n++) {
            check(builtin_function(fn, n), n);
        }
    }
    for (std::uint64_t k = 0; k < 100; k++) {
        check(random_function(3, RngSeed{k}), 3);
    }
}

TEST(boolfn, prune_keeps_value) {
    TruthTable tt = builtin_function(BuiltinFunction::InnerProduct, 3);
    BipartiteDecomposition full = decompose_bipartite(tt, 3);
    BipartiteDecomposition pruned = prune_zero_terms(full);
    EXPECT_EQ(pruned.terms.size(), 3u);
    for (std::uint32_t x = 0; x < 8; x++) {
        for (std::uint32_t y = 0; y < 8; y++) {
            EXPECT_EQ(pruned.evaluate(x, y), full.evaluate(x, y));
        }
    }
}

TEST(boolfn, decomposition_errors) {
    EXPECT_THROW(decompose_bipartite(TruthTable(3), 1), std::invalid_argument);
    EXPECT_THROW(decompose_bipartite(TruthTable(4), 1), std::invalid_argument);
    EXPECT_THROW(decompose_bipartite(TruthTable(kMaxTableVars), kMaxTableVars / 2 + 1), std::invalid_argument);
}

TEST(boolfn, builtin_functions) {
    TruthTable ip = builtin_function(BuiltinFunction::InnerProduct, 2);
    EXPECT_FALSE(ip[bipartite_index(3, 3, 2)]);
    EXPECT_TRUE(ip[bipartite_index(1, 3, 2)]);

    TruthTable eq = builtin_function(BuiltinFunction::Equality, 2);
    EXPECT_TRUE(eq[bipartite_index(2, 2, 2)]);
    EXPECT_FALSE(eq[bipartite_index(2, 1, 2)]);

    EXPECT_EQ(builtin_function(BuiltinFunction::Inequality, 1), table_of(2, {0, 1, 1, 0}));
    EXPECT_EQ(builtin_function(BuiltinFunction::AndOfPairs, 1), table_of(2, {0, 0, 0, 1}));

    TruthTable maj = builtin_function(BuiltinFunction::Majority, 2);
    EXPECT_TRUE(maj[0b0111]);
    EXPECT_FALSE(maj[0b0011]);

    TruthTable orp = builtin_function(BuiltinFunction::OrOfPairs, 3);
    EXPECT_TRUE(orp[bipartite_index(0b100, 0b110, 3)]);
    EXPECT_FALSE(orp[bipartite_index(0b100, 0b011, 3)]);

    EXPECT_EQ(parse_builtin_function("IP"), BuiltinFunction::InnerProduct);
    EXPECT_EQ(parse_builtin_function("and-pairs"), BuiltinFunction::AndOfPairs);
    EXPECT_THROW(parse_builtin_function("xor"), std::invalid_argument);
    EXPECT_THROW(builtin_function(BuiltinFunction::InnerProduct, 0), std::invalid_argument);
    EXPECT_THROW(builtin_function(BuiltinFunction::InnerProduct, kMaxPartyVars + 1), ResourceError);
}

TEST(boolfn, random_function_is_seeded) {
    EXPECT_EQ(random_function(3, RngSeed{8}), random_function(3, RngSeed{8}));
    EXPECT_NE(random_function(3, RngSeed{8}), random_function(3, RngSeed{9}));
    // Small tables keep their padding bits clear.
    TruthTable small = random_function(1, RngSeed{8});
    EXPECT_EQ(small.words()[0] >> 4, 0u);
}
