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

#include "nlbox/cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"

#include "nlbox/boolfn.h"
#include "nlbox/correlations.h"
#include "nlbox/descriptors.h"
#include "nlbox/experiments.h"
#include "nlbox/function_file.h"
#include "nlbox/parallel.h"
#include "nlbox/protocol.h"
#include "nlbox/reports.h"

namespace nlbox {

namespace {

struct RunConfig {
    std::string model = "pr";
    std::string function;
    std::string x;
    std::string y;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    unsigned workers = 0;
    std::string out;
    std::string format;
    bool exact = false;
    bool no_signalling = false;
    bool both_learn = false;
    bool baseline = false;
    bool general = false;
    bool prune = false;
    bool anf = false;
    bool decompose = false;
    unsigned all_functions = 0;
    std::vector<double> p_grid{0.75, 0.85, 0.9, 0.95, 1.0};
    std::vector<unsigned> box_counts{1, 2, 4, 8};
};

/// Thrown for configuration problems found after CLI11 parsing.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

RngSeed resolve_seed(const RunConfig &config) {
    if (config.seed) {
        return RngSeed{*config.seed};
    }
    if (const char *env = std::getenv("NLBOX_SEED"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        errno = 0;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0' || env[0] == '-') {
            throw UsageError(std::string("NLBOX_SEED is not an unsigned integer: '") + env + "'");
        }
        return RngSeed{v};
    }
    return RngSeed{0};
}

void emit(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
    file << content;
    if (!file) {
        throw std::runtime_error("failed writing " + path);
    }
}

std::string dump(const nlohmann::json &doc) {
    return doc.dump(2) + "\n";
}

int cmd_chsh(const RunConfig &config, std::ostream &out) {
    const CorrelationModel model = parse_model(config.model);
    const std::string descriptor = format_model(model);
    const double exact = chsh_score_exact(model);
    out << "model " << descriptor << "\n";
    out << "exact_score " << fixed(exact, 12) << "\n";

    int status = kExitOk;
    if (config.exact) {
        if (!config.out.empty()) {
            emit(config.out, dump(chsh_report(descriptor, exact, nullptr)), out);
        }
        return status;
    }

    const RngSeed seed = resolve_seed(config);
    const std::uint64_t trials = config.trials.value_or(100'000);
    if (trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const ChshEstimate estimate = chsh_monte_carlo(model, trials, seed, config.workers);
    out << "score " << fixed(estimate.score, 6) << " std_error " << fixed(estimate.std_error, 6)
        << " trials_per_setting " << trials << " seed " << seed.value << "\n";

    nlohmann::json report = chsh_report(descriptor, exact, &estimate);
    if (config.no_signalling) {
        const NoSignallingReport ns = no_signalling_test(model, std::max<std::uint64_t>(trials, 10'000), seed,
                                                         kDefaultSignallingThreshold, config.workers);
        double worst = 0;
        for (const auto &c : ns.checks) {
            worst = std::max(worst, c.tv_distance);
        }
        out << "no_signalling " << (ns.pass ? "pass" : "FAIL") << " max_tv " << fixed(worst, 6) << "\n";
        report["no_signalling"] = no_signalling_json(descriptor, ns, seed);
        if (!ns.pass) {
            status = kExitVerifyFailed;
        }
    }
    if (!config.out.empty()) {
        emit(config.out, dump(report), out);
    }
    return status;
}

int cmd_protocol(const RunConfig &config, std::ostream &out) {
    const FunctionSpec fn = load_function(config.function);
    const Bits x = parse_bit_string(config.x, fn.n);
    const Bits y = parse_bit_string(config.y, fn.n);
    const bool expected = fn.table[bipartite_index(index_of(x), index_of(y), fn.n)];
    const RngSeed seed = resolve_seed(config);

    std::string model_descriptor = "none";
    ProtocolResult result;
    bool probabilistic = false;
    if (config.baseline) {
        result = run_baseline_protocol(fn.table, x, y);
    } else {
        const CorrelationModel model = parse_model(config.model);
        model_descriptor = format_model(model);
        probabilistic = !std::holds_alternative<PerfectPR>(model);
        Rng rng(seed);
        ProtocolOptions options{config.both_learn};
        if (fn.builtin == BuiltinFunction::InnerProduct && !config.general) {
            BoxPool pool(model, fn.n);
            result = run_ip_protocol(x, y, pool, rng, options);
        } else {
            BipartiteDecomposition decomposition = decompose_bipartite(fn.table, fn.n);
            if (config.prune) {
                decomposition = prune_zero_terms(std::move(decomposition));
            }
            BoxPool pool(model, decomposition.terms.size());
            result = run_general_protocol(decomposition, x, y, pool, rng, options);
        }
    }

    out << "output=" << int(result.output) << " bits=" << result.transcript.bits_communicated()
        << " boxes=" << result.boxes_consumed << "\n";
    out << "f(x,y)=" << int(expected) << " (reference value from the truth table)\n";
    if (probabilistic) {
        out << "note: model " << model_descriptor
            << " is not a perfect PR box, so the output is correct only with some probability\n";
    }

    if (!config.out.empty()) {
        nlohmann::json messages = nlohmann::json::array();
        for (const auto &m : result.transcript.messages()) {
            messages.push_back({
                {"direction", m.direction == Direction::BobToAlice ? "bob_to_alice" : "alice_to_bob"},
                {"payload", format_bit_string(m.payload)},
            });
        }
        nlohmann::json report{
            {"function", fn.descriptor},
            {"model", model_descriptor},
            {"n", fn.n},
            {"x", config.x},
            {"y", config.y},
            {"output", int(result.output)},
            {"expected", int(expected)},
            {"bits_communicated", result.transcript.bits_communicated()},
            {"boxes_consumed", result.boxes_consumed},
            {"messages", std::move(messages)},
            {"seed", seed.value},
        };
        emit(config.out, dump(report), out);
    }
    return kExitOk;
}

// Verifies every Boolean function on 2n variables, n in {1, 2}.
int verify_all_functions(const RunConfig &config, const CorrelationModel &model, std::ostream &out) {
    const unsigned n = config.all_functions;
    if (n < 1 || n > 2) {
        throw UsageError("--all-functions supports n = 1 or n = 2");
    }
    const RngSeed seed = resolve_seed(config);
    const std::uint64_t trials = config.trials.value_or(1);
    if (trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const std::uint64_t table_bits = std::uint64_t{1} << (2 * n);
    const std::uint64_t functions = std::uint64_t{1} << table_bits;

    struct Tally {
        std::uint64_t errors = 0;
        std::uint64_t failing = 0;
        std::map<std::size_t, std::uint64_t> bits;
    };
    std::vector<Tally> tallies(config.workers == 0 ? default_workers() : config.workers);
    std::size_t boxes_per_run = 0;
    parallel_slices(functions, config.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned slice) {
        Tally &tally = tallies[slice];
        for (std::uint64_t k = begin; k < end; k++) {
            TruthTable tt(2 * n);
            tt.words()[0] = k;
            Rng per_function = Rng::derive(seed, k);
            VerifyReport r = verify_exhaustive(tt, n, model, trials, RngSeed{per_function()}, 1);
            tally.errors += r.errors;
            tally.failing += r.errors != 0;
            for (const auto &[bits, count] : r.bits_histogram) {
                tally.bits[bits] += count;
            }
            if (k == begin && slice == 0) {
                boxes_per_run = r.boxes_per_run;
            }
        }
    });

    Tally total;
    for (const auto &t : tallies) {
        total.errors += t.errors;
        total.failing += t.failing;
        for (const auto &[bits, count] : t.bits) {
            total.bits[bits] += count;
        }
    }
    const std::string descriptor = format_model(model);
    out << "function=all:" << n << " model=" << descriptor << " functions=" << functions << " pairs=" << table_bits
        << " errors=" << total.errors << " failing_functions=" << total.failing << "\n";

    if (!config.out.empty()) {
        nlohmann::json histogram = nlohmann::json::object();
        for (const auto &[bits, count] : total.bits) {
            histogram[std::to_string(bits)] = count;
        }
        nlohmann::json report{
            {"function", "all:" + std::to_string(n)},
            {"model", descriptor},
            {"n", n},
            {"functions", functions},
            {"pairs", table_bits},
            {"trials_per_pair", trials},
            {"errors", total.errors},
            {"failing_functions", total.failing},
            {"bits_per_run", total.bits.size() == 1 ? nlohmann::json(total.bits.begin()->first) : nlohmann::json()},
            {"boxes_per_run", boxes_per_run},
            {"seed", seed.value},
            {"bits_histogram", std::move(histogram)},
        };
        emit(config.out, dump(report), out);
    }
    return total.errors == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const RunConfig &config, std::ostream &out) {
    const CorrelationModel model = parse_model(config.model);
    if (config.all_functions != 0) {
        if (!config.function.empty()) {
            throw UsageError("--function and --all-functions are mutually exclusive");
        }
        return verify_all_functions(config, model, out);
    }
    if (config.function.empty()) {
        throw UsageError("verify needs --function or --all-functions");
    }
    const FunctionSpec fn = load_function(config.function);
    const RngSeed seed = resolve_seed(config);
    const std::uint64_t trials = config.trials.value_or(1);
    if (trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const VerifyReport report = verify_exhaustive(fn.table, fn.n, model, trials, seed, config.workers);
    const std::string descriptor = format_model(model);
    nlohmann::json doc = verify_report(fn.descriptor, descriptor, report, seed);

    out << "function=" << fn.descriptor << " model=" << descriptor << " n=" << report.n << " pairs=" << report.pairs
        << " runs=" << report.runs << " errors=" << report.errors << " bits_per_run=" << doc["bits_per_run"].dump()
        << " boxes_per_run=" << report.boxes_per_run << "\n";
    if (!config.out.empty()) {
        emit(config.out, dump(doc), out);
    }
    return report.errors == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const RunConfig &config, std::ostream &out) {
    const RngSeed seed = resolve_seed(config);
    const std::uint64_t trials = config.trials.value_or(100'000);
    const std::string format = config.format.empty() ? "csv" : config.format;
    if (format != "csv" && format != "json") {
        throw UsageError("--format must be csv or json");
    }
    const std::vector<SweepRow> rows = noisy_sweep(config.p_grid, config.box_counts, trials, seed, config.workers);
    emit(config.out, format == "csv" ? sweep_csv(rows) : dump(sweep_json(rows)), out);
    return kExitOk;
}

int cmd_gen_function(const RunConfig &config, std::ostream &out) {
    const FunctionSpec fn = load_function(config.function);
    if (config.decompose) {
        BipartiteDecomposition decomposition = decompose_bipartite(fn.table, fn.n);
        if (config.prune) {
            decomposition = prune_zero_terms(std::move(decomposition));
        }
        for (const auto &term : decomposition.terms) {
            std::string q = "1";
            if (term.bob_monomial != 0) {
                q.clear();
                for (unsigned j = 0; j < fn.n; j++) {
                    if ((term.bob_monomial >> j) & 1) {
                        q += "y" + std::to_string(j + 1);
                    }
                }
            }
            out << "(" << format_anf(term.alice_poly, "x") << ") * " << q << "\n";
        }
    }
    const nlohmann::json doc = config.anf ? function_to_json(anf_from_truth_table(fn.table)) : function_to_json(fn.table);
    if (!config.decompose || !config.out.empty()) {
        emit(config.out, dump(doc), out);
    }
    return kExitOk;
}

int cmd_local_bound(const RunConfig &config, std::ostream &out) {
    const LocalBoundReport report = local_bound_report();
    for (const auto &s : report.strategies) {
        out << format_model(s.strategy) << " " << s.score << "\n";
    }
    out << "max_score " << report.max_score << " achieved_by " << report.argmax.size() << " strategies\n";
    if (!config.out.empty()) {
        emit(config.out, dump(local_bound_json(report)), out);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"nlbox: nonlocal box correlations and one-bit communication protocols"};
    app.name("nlbox");
    app.require_subcommand(1);
    RunConfig config;

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", config.seed, "RNG seed (falls back to $NLBOX_SEED, then 0)");
    };
    auto add_workers = [&](CLI::App *sub) {
        sub->add_option("--workers", config.workers, "Worker threads (0 = available parallelism)");
    };
    auto add_out = [&](CLI::App *sub) { sub->add_option("--out", config.out, "Write the report to this path"); };
    const std::string model_help = "Box model: local:a0a1b0b1 | quantum:canonical | quantum:a0,a1,b0,b1 | pr | noisy-pr:p";
    const std::string function_help =
        "Function: ip:n | eq:n | neq:n | and-pairs:n | or-pairs:n | maj:n | random:n:seed | file:path.json";

    auto *chsh = app.add_subcommand("chsh", "Exact and sampled CHSH score of a model");
    chsh->add_option("--model", config.model, model_help)->required();
    chsh->add_option("--trials", config.trials, "Samples per setting (default 100000)");
    chsh->add_flag("--exact", config.exact, "Only print the exact score");
    chsh->add_flag("--no-signalling", config.no_signalling, "Also run the no-signalling test");
    add_seed(chsh);
    add_workers(chsh);
    add_out(chsh);

    auto *protocol = app.add_subcommand("protocol", "Run the one-bit protocol on one input pair");
    protocol->add_option("--function", config.function, function_help)->required();
    protocol->add_option("--x", config.x, "Alice's input, most significant variable first (x_n ... x_1)")->required();
    protocol->add_option("--y", config.y, "Bob's input, most significant variable first (y_n ... y_1)")->required();
    protocol->add_option("--model", config.model, model_help + " (default pr)");
    protocol->add_flag("--both-learn", config.both_learn, "Alice sends the result back (2 bits)");
    protocol->add_flag("--baseline", config.baseline, "Run the trivial protocol: Bob sends all of y");
    protocol->add_flag("--general", config.general, "Use the decomposition protocol even for ip");
    protocol->add_flag("--prune", config.prune, "Skip boxes whose Alice polynomial is zero");
    add_seed(protocol);
    add_out(protocol);

    auto *verify = app.add_subcommand("verify", "Run the protocol on every input pair and count errors");
    verify->add_option("--function", config.function, function_help);
    verify->add_option("--all-functions", config.all_functions, "Verify every function with this n (1 or 2)");
    verify->add_option("--model", config.model, model_help + " (default pr)");
    verify->add_option("--trials", config.trials, "Runs per input pair (default 1)");
    add_seed(verify);
    add_workers(verify);
    add_out(verify);

    auto *sweep = app.add_subcommand("sweep", "IP protocol success rate under noisy PR boxes");
    sweep->add_option("--p", config.p_grid, "Box success probabilities in [1/2, 1]")->delimiter(',');
    sweep->add_option("--N", config.box_counts, "Input lengths")->delimiter(',');
    sweep->add_option("--trials", config.trials, "Runs per grid point (default 100000)");
    sweep->add_option("--format", config.format, "csv or json (default csv)");
    add_seed(sweep);
    add_workers(sweep);
    add_out(sweep);

    auto *gen = app.add_subcommand("gen-function", "Write a function file");
    gen->add_option("--function", config.function, function_help)->required();
    gen->add_flag("--anf", config.anf, "Write anf_monomials instead of truth_table_hex");
    gen->add_flag("--decompose", config.decompose, "Print the terms P(x) * Q(y)");
    gen->add_flag("--prune", config.prune, "With --decompose, omit zero terms");
    add_out(gen);

    auto *local = app.add_subcommand("local-bound", "Score every deterministic local strategy");
    add_out(local);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (chsh->parsed()) {
            return cmd_chsh(config, out);
        }
        if (protocol->parsed()) {
            return cmd_protocol(config, out);
        }
        if (verify->parsed()) {
            return cmd_verify(config, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config, out);
        }
        if (gen->parsed()) {
            return cmd_gen_function(config, out);
        }
        return cmd_local_bound(config, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace nlbox
