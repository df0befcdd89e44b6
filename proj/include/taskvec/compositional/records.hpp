#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "taskvec/backend/types.hpp"

namespace taskvec::compositional {

// A synthetic car listing. color/city/model are the three target attributes
// the JSON asks for; everything in `filler` is distractor content that only
// appears in the description.
struct CarRecord {
    std::string color;
    std::string city;
    std::string model;
    std::vector<std::pair<std::string, std::string>> filler;  // attribute -> value
};

enum class DescriptionStyle {
    prose,  // short English sentences, for real tokenizers
    tags,   // "name value" pairs, the toy tokenizer's native shape
};

struct AttributePools {
    std::vector<std::string> colors;
    std::vector<std::string> cities;
    std::vector<std::string> models;
    // attribute name -> candidate values, in description order.
    std::vector<std::pair<std::string, std::vector<std::string>>> fillers;
    DescriptionStyle style = DescriptionStyle::prose;
};

// Curated English pools (colors chosen to be single tokens under common BPE
// vocabularies; verified against the live tokenizer by check_pools).
AttributePools car_pools();

// Single-letter pools over the toy vocabulary; fillers are the toy's two
// non-target tags (year, price).
AttributePools toy_pools();

// Every color must be a single token, bare and with a leading space, under
// the active tokenizer. Throws config_error naming the first offending word.
void check_pools(const backend::Backend& b, const AttributePools& pools);

// Deterministic per (pools, seed).
CarRecord gen_car_record(const AttributePools& pools, std::uint64_t seed);

// n records, no two identical (rejection over fresh seeds derived from `seed`).
std::vector<CarRecord> gen_car_records(const AttributePools& pools, std::uint64_t seed, size_t n);

// Byte range [begin, end) into a rendered string.
struct TextSpan {
    size_t begin = 0;
    size_t end = 0;
};

// The rendered JSON object plus the byte spans of its key names and values,
// in (color, city, model) order. Token-level spans are resolved later against
// a concrete tokenizer (see prompt.hpp).
struct JsonTarget {
    std::string text;
    std::array<TextSpan, 3> key_spans;
    std::array<TextSpan, 3> value_spans;
};

// `{"color":"...","city":"...","model":"..."}`: fixed key order, no
// whitespace.
JsonTarget render_json(const CarRecord& record);

// Strict inverse of render_json: exactly those three keys in that order, else
// parse_error.
std::tuple<std::string, std::string, std::string> parse_json_target(const std::string& text);

// All attributes (targets and fillers) exactly once each, pair order varied
// deterministically by record content.
std::string render_description(const CarRecord& record, DescriptionStyle style);

}  // namespace taskvec::compositional
