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


// Standalone acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero if
// any criterion fails. Runtime limits are checked against wall-clock time on one worker.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nlbox/boolfn.h"
#include "nlbox/cli.h"
#include "nlbox/correlations.h"
#include "nlbox/experiments.h"
#include "nlbox/protocol.h"

using namespace nlbox;

namespace {

constexpr unsigned kWorkers = 1;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string &what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool run_criterion(int id, const char *title, double limit_seconds, const std::function<void(Outcome &)> &body) {
    Outcome outcome;
    auto start = std::chrono::steady_clock::now();
    try {
        body(outcome);
    } catch (const std::exception &e) {
        outcome.require(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.2fs exceeds %.0fs", elapsed, limit_seconds);
        outcome.require(elapsed < limit_seconds, buf);
    }
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", outcome.ok ? "PASS" : "FAIL", id, title, elapsed,
                outcome.ok ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
    return outcome.ok;
}

bool reference(const TruthTable &tt, const Bits &x, const Bits &y) {
    return tt.get(bipartite_index(index_of(x), index_of(y), unsigned(x.size())));
}

void classical_bound(Outcome &o) {
    auto all = enumerate_local_strategies();
    o.require(all.size() == 16, "expected 16 deterministic strategies");
    int best = 0;
    for (const auto &s : all) {
        best = std::max(best, s.score);
    }
    o.require(best == 3, "maximum over deterministic strategies is not 3");

    // Dyadic weights keep the floating-point mixture score exact.
    constexpr std::uint64_t kDenominator = 1u << 20;
    Rng rng(RngSeed{101});
    for (int k = 0; k < 1000; k++) {
        unsigned components = 1 + unsigned(rng() % 16);
        std::vector<std::uint64_t> cuts{0, kDenominator};
        for (unsigned c = 1; c < components; c++) {
            cuts.push_back(rng() % (kDenominator + 1));
        }
        std::sort(cuts.begin(), cuts.end());
        SharedRandomness mix;
        std::uint64_t weighted_wins = 0;
        for (unsigned c = 0; c < components; c++) {
            std::uint64_t w = cuts[c + 1] - cuts[c];
            auto strategy = LocalDeterministic::from_mask(unsigned(rng() % 16));
            mix.mixture.emplace_back(double(w) / double(kDenominator), strategy);
            weighted_wins += w * std::uint64_t(local_score(strategy));
        }
        validate(mix);
        o.require(weighted_wins <= 3 * kDenominator, "integer mixture score above 3");
        o.require(chsh_score_exact(mix) <= 3.0, "mixture score above 3");
    }
}

void quantum_value(Outcome &o) {
    double exact = chsh_score_exact(Quantum::canonical());
    o.require(std::abs(exact - (2 + std::sqrt(2.0))) <= 1e-12, "exact quantum score off by more than 1e-12");
    ChshEstimate e = chsh_monte_carlo(Quantum::canonical(), 1000000, RngSeed{202}, kWorkers);
    o.require(std::abs(e.score - 3.41421) <= 0.005, "Monte Carlo quantum score outside 0.005 of 3.41421");
}

void pr_box(Outcome &o) {
    o.require(chsh_score_exact(PerfectPR{}) == 4.0, "exact PR score is not 4");
    ChshEstimate e = chsh_monte_carlo(PerfectPR{}, 1000000, RngSeed{303}, kWorkers);
    o.require(e.score == 4.0, "sampled PR score is not 4");
    for (auto wins : e.wins) {
        o.require(wins == 1000000, "PR box lost a round");
    }
    for (const CorrelationModel &model : {CorrelationModel{PerfectPR{}}, CorrelationModel{Quantum::canonical()}}) {
        NoSignallingReport r = no_signalling_test(model, 1000000, RngSeed{304}, kDefaultSignallingThreshold, kWorkers);
        for (const auto &check : r.checks) {
            o.require(check.tv_distance < 0.01, "TV distance not below 0.01");
        }
        o.require(r.pass, "no-signalling test failed");
    }
}

void check_ip_run(Outcome &o, const Bits &x, const Bits &y, Rng &rng) {
    const unsigned n = unsigned(x.size());
    BoxPool pool(PerfectPR{}, n);
    ProtocolResult r = run_ip_protocol(x, y, pool, rng);
    bool expected = false;
    for (unsigned i = 0; i < n; i++) {
        expected ^= x[i] && y[i];
    }
    o.require(r.output == expected, "IP protocol error");
    o.require(r.transcript.bits_communicated() == 1, "IP protocol did not send exactly 1 bit");
    o.require(r.boxes_consumed == n && pool.consumed() == n, "IP protocol did not consume N boxes");
}

void ip_protocol(Outcome &o) {
    Rng rng(RngSeed{404});
    for (unsigned n = 1; n <= 6; n++) {
        for (std::uint64_t xi = 0; xi < (1u << n); xi++) {
            for (std::uint64_t yi = 0; yi < (1u << n); yi++) {
                check_ip_run(o, bits_of(xi, n), bits_of(yi, n), rng);
            }
        }
    }
    for (unsigned n = 7; n <= 10; n++) {
        for (int k = 0; k < 10000; k++) {
            check_ip_run(o, bits_of(rng() % (1u << n), n), bits_of(rng() % (1u << n), n), rng);
        }
    }
}

void check_function(Outcome &o, const TruthTable &tt, unsigned n, Rng &rng) {
    const BipartiteDecomposition decomposition = decompose_bipartite(tt, n);
    const std::size_t boxes = std::size_t(1) << n;
    for (std::uint64_t xi = 0; xi < boxes; xi++) {
        for (std::uint64_t yi = 0; yi < boxes; yi++) {
            Bits x = bits_of(xi, n), y = bits_of(yi, n);
            BoxPool pool(PerfectPR{}, boxes);
            ProtocolResult r = run_general_protocol(decomposition, x, y, pool, rng);
            o.require(r.output == reference(tt, x, y), "general protocol error");
            o.require(r.transcript.bits_communicated() == 1, "general protocol did not send exactly 1 bit");
            o.require(r.boxes_consumed == boxes, "general protocol did not consume 2^n boxes");
        }
    }
}

void general_protocol(Outcome &o) {
    Rng rng(RngSeed{505});
    for (std::uint64_t fn = 0; fn < (1u << 16); fn++) {
        TruthTable tt = TruthTable::from_function(4, [&](std::uint64_t i) { return (fn >> i) & 1; });
        check_function(o, tt, 2, rng);
    }
    for (std::uint64_t k = 0; k < 200; k++) {
        check_function(o, random_function(3, RngSeed{5000 + k}), 3, rng);
    }

    const std::vector<std::pair<std::string, std::uint32_t>> expected{
        {"1 + x1 + x2 + x1x2", 0b00}, {"1 + x2", 0b01}, {"1 + x1", 0b10}, {"1", 0b11}};
    auto eq2 = decompose_bipartite(builtin_function(BuiltinFunction::Equality, 2), 2);
    o.require(eq2.terms.size() == expected.size(), "EQ2 decomposition does not have four terms");
    for (std::size_t i = 0; i < expected.size() && i < eq2.terms.size(); i++) {
        o.require(format_anf(eq2.terms[i].alice_poly, "x") == expected[i].first, "EQ2 term polynomial differs");
        o.require(eq2.terms[i].bob_monomial == expected[i].second, "EQ2 term monomial differs");
    }
}

void anf_round_trip(Outcome &o) {
    Rng rng(RngSeed{606});
    for (int k = 0; k < 1000; k++) {
        unsigned m = 1 + unsigned(rng() % 12);
        TruthTable tt = TruthTable::from_function(m, [&](std::uint64_t) { return rng.bit(); });
        o.require(truth_table_from_anf(anf_from_truth_table(tt)) == tt, "ANF round trip changed a table");
    }
}

double enumerate_even_errors(double p, unsigned n) {
    double total = 0;
    for (std::uint32_t pattern = 0; pattern < (1u << n); pattern++) {
        int flips = std::popcount(pattern);
        if (flips % 2 == 0) {
            total += std::pow(1 - p, flips) * std::pow(p, int(n) - flips);
        }
    }
    return total;
}

void noisy_degradation(Outcome &o) {
    const std::vector<double> ps{0.75, 0.85, 0.9, 0.95, 1.0};
    const std::vector<unsigned> ns{1, 2, 4, 8};
    for (double p : ps) {
        for (unsigned n = 1; n <= 8; n++) {
            o.require(std::abs(noisy_ip_success(p, n) - enumerate_even_errors(p, n)) <= 1e-12,
                      "success formula disagrees with enumeration");
        }
    }
    for (const SweepRow &row : noisy_sweep(ps, ns, 100000, RngSeed{707}, kWorkers)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "p=%g N=%u empirical %.5f analytic %.5f", row.p, row.boxes,
                      row.empirical_success, row.analytic_success);
        o.require(std::abs(row.empirical_success - row.analytic_success) <= 3 * row.std_error, buf);
    }
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void reproducibility(Outcome &o) {
    const auto dir = std::filesystem::temp_directory_path() / "nlbox_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::vector<std::string>> commands{
        {"chsh", "--model", "quantum:canonical", "--trials", "20000", "--no-signalling", "--seed", "9"},
        {"chsh", "--model", "noisy-pr:0.8", "--trials", "20000", "--exact", "--seed", "9"},
        {"protocol", "--function", "random:3:4", "--x", "101", "--y", "011", "--model", "noisy-pr:0.7", "--seed", "9"},
        {"verify", "--function", "maj:2", "--model", "noisy-pr:0.9", "--trials", "50", "--seed", "9"},
        {"sweep", "--trials", "5000", "--seed", "9"},
        {"sweep", "--trials", "5000", "--format", "json", "--seed", "9"},
        {"gen-function", "--function", "random:4:9", "--anf"},
        {"local-bound"},
    };
    for (std::size_t c = 0; c < commands.size(); c++) {
        std::string first;
        for (int round = 0; round < 2; round++) {
            auto path = dir / ("report_" + std::to_string(c) + "_" + std::to_string(round));
            auto args = commands[c];
            args.insert(args.end(), {"--out", path.string()});
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            o.require(code == kExitOk || (code == kExitVerifyFailed && args[0] == "verify"),
                      "command failed: " + args[0] + " " + err.str());
            std::string report = slurp(path);
            o.require(!report.empty(), "empty report from " + args[0]);
            if (round == 0) {
                first = report;
            } else {
                o.require(report == first, "reports differ for " + args[0]);
            }
        }
    }
    std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run_criterion(1, "local strategies and mixtures never exceed 3", 1, classical_bound);
    ok &= run_criterion(2, "quantum score reaches 2+sqrt(2)", 10, quantum_value);
    ok &= run_criterion(3, "PR box scores 4 without signalling", 0, pr_box);
    ok &= run_criterion(4, "inner product with one bit and N boxes", 30, ip_protocol);
    ok &= run_criterion(5, "every function on 2+2 and random 3+3 bits with one bit", 120, general_protocol);
    ok &= run_criterion(6, "ANF round trip on 1000 random tables", 10, anf_round_trip);
    ok &= run_criterion(7, "noisy IP success matches (1+(2p-1)^N)/2", 0, noisy_degradation);
    ok &= run_criterion(8, "same seed gives byte-identical reports", 0, reproducibility);
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
    return ok ? 0 : 1;
}
