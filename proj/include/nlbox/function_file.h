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

#ifndef NLBOX_FUNCTION_FILE_H
#define NLBOX_FUNCTION_FILE_H

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "nlbox/boolfn.h"

namespace nlbox {

// Function files are JSON objects of one of two forms:
//   { "num_vars": m, "truth_table_hex": "..." }
//   { "num_vars": m, "anf_monomials": [mask, ...] }
// The hex string holds the 2^m table bits four per digit: digit k carries entries
// 4k .. 4k+3, entry 4k in its least significant bit. Tables with fewer than four
// entries use a single digit whose unused high bits are zero.

std::string truth_table_to_hex(const TruthTable &tt);
/// Throws std::invalid_argument on a wrong length, a non-hex digit or nonzero padding bits.
TruthTable truth_table_from_hex(unsigned num_vars, std::string_view hex);

nlohmann::json function_to_json(const TruthTable &tt);
nlohmann::json function_to_json(const AnfPolynomial &poly);
/// Accepts either form. Throws std::invalid_argument on malformed content.
TruthTable function_from_json(const nlohmann::json &doc);

TruthTable read_function_file(const std::filesystem::path &path);

}  // namespace nlbox

#endif
