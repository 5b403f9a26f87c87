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

#ifndef NLBOX_DESCRIPTORS_H
#define NLBOX_DESCRIPTORS_H

#include <optional>
#include <string>
#include <string_view>

#include "nlbox/boolfn.h"
#include "nlbox/correlations.h"

namespace nlbox {

/// Parses "local:a0a1b0b1", "quantum:canonical", "quantum:a0,a1,b0,b1", "pr" or
/// "noisy-pr:p". Throws std::invalid_argument on anything else.
CorrelationModel parse_model(std::string_view descriptor);

/// Inverse of parse_model for the descriptor-expressible models. Shared-randomness
/// mixtures have no descriptor and render as "shared:<k components>".
std::string format_model(const CorrelationModel &model);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// A bipartite function over 2n variables plus the descriptor it came from.
struct FunctionSpec {
    std::string descriptor;
    TruthTable table;
    unsigned n;
    /// Set for the builtin functions.
    std::optional<BuiltinFunction> builtin;
};

/// Parses "<builtin>:n" (ip, eq, neq, and-pairs, or-pairs, maj), "random:n:seed" or
/// "file:path". Files must have an even number of variables.
FunctionSpec load_function(std::string_view descriptor);

/// Reads a command-line bit string written most-significant variable first, so the last
/// character is variable 1. Throws std::invalid_argument unless it has exactly `length`
/// characters from {0, 1}.
Bits parse_bit_string(std::string_view text, unsigned length);
std::string format_bit_string(const Bits &bits);

}  // namespace nlbox

#endif
