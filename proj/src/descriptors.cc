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

#include "nlbox/descriptors.h"

#include <charconv>
#include <stdexcept>
#include <vector>

#include "nlbox/function_file.h"

namespace nlbox {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_double(std::string_view text, std::string_view what) {
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

unsigned parse_party_size(std::string_view text) {
    std::uint64_t n = parse_unsigned(text, "input length");
    if (n > 64) {
        throw std::invalid_argument("input length " + std::string(text) + " is out of range");
    }
    return static_cast<unsigned>(n);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

CorrelationModel parse_model(std::string_view descriptor) {
    const auto colon = descriptor.find(':');
    const std::string_view kind = descriptor.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    CorrelationModel model;
    if (kind == "pr" && !has_arg) {
        model = PerfectPR{};
    } else if (kind == "local" && has_arg) {
        if (arg.size() != 4 || arg.find_first_not_of("01") != std::string_view::npos) {
            throw std::invalid_argument("local model needs four bits a0a1b0b1, got '" + std::string(arg) + "'");
        }
        model = LocalDeterministic{{arg[0] == '1', arg[1] == '1'}, {arg[2] == '1', arg[3] == '1'}};
    } else if (kind == "quantum" && has_arg) {
        if (arg == "canonical") {
            model = Quantum::canonical();
        } else {
            auto parts = split(arg, ',');
            if (parts.size() != 4) {
                throw std::invalid_argument("quantum model needs 'canonical' or four angles a0,a1,b0,b1");
            }
            Quantum q;
            q.alice_angles = {parse_double(parts[0], "angle"), parse_double(parts[1], "angle")};
            q.bob_angles = {parse_double(parts[2], "angle"), parse_double(parts[3], "angle")};
            model = q;
        }
    } else if (kind == "noisy-pr" && has_arg) {
        model = NoisyPR{parse_double(arg, "probability")};
    } else {
        throw std::invalid_argument(
            "unknown model '" + std::string(descriptor) +
            "' (expected local:a0a1b0b1, quantum:canonical, quantum:a0,a1,b0,b1, pr or noisy-pr:p)");
    }
    validate(model);
    return model;
}

std::string format_model(const CorrelationModel &model) {
    if (const auto *m = std::get_if<LocalDeterministic>(&model)) {
        std::string s = "local:";
        for (bool b : {m->alice[0], m->alice[1], m->bob[0], m->bob[1]}) {
            s += b ? '1' : '0';
        }
        return s;
    }
    if (const auto *m = std::get_if<SharedRandomness>(&model)) {
        return "shared:" + std::to_string(m->mixture.size());
    }
    if (const auto *m = std::get_if<Quantum>(&model)) {
        Quantum c = Quantum::canonical();
        if (m->alice_angles == c.alice_angles && m->bob_angles == c.bob_angles) {
            return "quantum:canonical";
        }
        return "quantum:" + format_double(m->alice_angles[0]) + "," + format_double(m->alice_angles[1]) + "," +
               format_double(m->bob_angles[0]) + "," + format_double(m->bob_angles[1]);
    }
    if (std::holds_alternative<PerfectPR>(model)) {
        return "pr";
    }
    return "noisy-pr:" + format_double(std::get<NoisyPR>(model).p);
}

FunctionSpec load_function(std::string_view descriptor) {
    const auto colon = descriptor.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument(
            "function descriptor '" + std::string(descriptor) + "' needs the form name:n, random:n:seed or file:path");
    }
    const std::string_view kind = descriptor.substr(0, colon);
    const std::string_view arg = descriptor.substr(colon + 1);

    if (kind == "file") {
        TruthTable tt = read_function_file(std::filesystem::path(std::string(arg)));
        if (tt.num_vars() % 2 != 0) {
            throw std::invalid_argument("function file must have an even number of variables (x then y)");
        }
        unsigned n = tt.num_vars() / 2;
        return {std::string(descriptor), std::move(tt), n, std::nullopt};
    }
    if (kind == "random") {
        auto parts = split(arg, ':');
        if (parts.size() != 2) {
            throw std::invalid_argument("random function descriptor needs the form random:n:seed");
        }
        unsigned n = parse_party_size(parts[0]);
        RngSeed seed{parse_unsigned(parts[1], "seed")};
        return {std::string(descriptor), random_function(n, seed), n, std::nullopt};
    }
    BuiltinFunction fn = parse_builtin_function(kind);
    unsigned n = parse_party_size(arg);
    return {std::string(descriptor), builtin_function(fn, n), n, fn};
}

Bits parse_bit_string(std::string_view text, unsigned length) {
    if (text.size() != length || text.find_first_not_of("01") != std::string_view::npos) {
        throw std::invalid_argument(
            "bit string '" + std::string(text) + "' must have exactly " + std::to_string(length) + " digits 0/1");
    }
    Bits bits(length);
    for (unsigned j = 0; j < length; j++) {
        bits[j] = text[length - 1 - j] == '1';
    }
    return bits;
}

std::string format_bit_string(const Bits &bits) {
    std::string s(bits.size(), '0');
    for (std::size_t j = 0; j < bits.size(); j++) {
        s[bits.size() - 1 - j] = bits[j] ? '1' : '0';
    }
    return s;
}

}  // namespace nlbox
