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

#include "nlbox/function_file.h"

#include <fstream>
#include <stdexcept>

namespace nlbox {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

std::size_t hex_length(unsigned num_vars) {
    return num_vars >= 2 ? std::size_t{1} << (num_vars - 2) : 1;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

// Integers built in code are signed even when non-negative; parsed ones are unsigned.
bool is_natural(const nlohmann::json &v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

unsigned read_num_vars(const nlohmann::json &doc) {
    if (!doc.contains("num_vars") || !is_natural(doc["num_vars"])) {
        throw std::invalid_argument("function file needs an unsigned integer \"num_vars\"");
    }
    auto m = doc["num_vars"].get<std::uint64_t>();
    if (m == 0 || m > kMaxTableVars) {
        throw std::invalid_argument("\"num_vars\" must lie in [1, " + std::to_string(kMaxTableVars) + "]");
    }
    return static_cast<unsigned>(m);
}

}  // namespace

std::string truth_table_to_hex(const TruthTable &tt) {
    std::string hex(hex_length(tt.num_vars()), '0');
    auto words = tt.words();
    for (std::size_t k = 0; k < hex.size(); k++) {
        hex[k] = kHexDigits[(words[k / 16] >> (4 * (k % 16))) & 0xF];
    }
    return hex;
}

TruthTable truth_table_from_hex(unsigned num_vars, std::string_view hex) {
    TruthTable tt(num_vars);
    if (hex.size() != hex_length(num_vars)) {
        throw std::invalid_argument(
            "truth_table_hex has " + std::to_string(hex.size()) + " digits, expected " +
            std::to_string(hex_length(num_vars)));
    }
    auto words = tt.words();
    for (std::size_t k = 0; k < hex.size(); k++) {
        int v = hex_value(hex[k]);
        if (v < 0) {
            throw std::invalid_argument(std::string("invalid hex digit '") + hex[k] + "'");
        }
        words[k / 16] |= std::uint64_t(v) << (4 * (k % 16));
    }
    if (num_vars < 2 && (words[0] >> tt.size()) != 0) {
        throw std::invalid_argument("truth_table_hex sets bits beyond the table");
    }
    return tt;
}

nlohmann::json function_to_json(const TruthTable &tt) {
    return {{"num_vars", tt.num_vars()}, {"truth_table_hex", truth_table_to_hex(tt)}};
}

nlohmann::json function_to_json(const AnfPolynomial &poly) {
    nlohmann::json monomials = nlohmann::json::array();
    for (std::uint32_t m : poly.monomials()) {
        monomials.push_back(m);
    }
    return {{"num_vars", poly.num_vars()}, {"anf_monomials", std::move(monomials)}};
}

TruthTable function_from_json(const nlohmann::json &doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("function file must hold a JSON object");
    }
    const unsigned m = read_num_vars(doc);
    const bool has_hex = doc.contains("truth_table_hex");
    const bool has_anf = doc.contains("anf_monomials");
    if (has_hex == has_anf) {
        throw std::invalid_argument("function file needs exactly one of \"truth_table_hex\" and \"anf_monomials\"");
    }
    if (has_hex) {
        if (!doc["truth_table_hex"].is_string()) {
            throw std::invalid_argument("\"truth_table_hex\" must be a string");
        }
        return truth_table_from_hex(m, doc["truth_table_hex"].get<std::string>());
    }
    if (!doc["anf_monomials"].is_array()) {
        throw std::invalid_argument("\"anf_monomials\" must be an array");
    }
    std::vector<std::uint32_t> monomials;
    for (const auto &v : doc["anf_monomials"]) {
        if (!is_natural(v) || v.get<std::uint64_t>() >= (std::uint64_t{1} << m)) {
            throw std::invalid_argument("each monomial must be an integer bitmask below 2^num_vars");
        }
        monomials.push_back(v.get<std::uint32_t>());
    }
    return truth_table_from_anf(AnfPolynomial(m, std::move(monomials)));
}

TruthTable read_function_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open function file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument("function file " + path.string() + " is not valid JSON: " + e.what());
    }
    return function_from_json(doc);
}

}  // namespace nlbox
