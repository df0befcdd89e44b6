#include "taskvec/compositional/records.hpp"

#include <sstream>

#include "taskvec/common/errors.hpp"
#include "taskvec/common/hash.hpp"
#include "taskvec/common/rng.hpp"

namespace taskvec::compositional {

AttributePools car_pools() {
    AttributePools p;
    p.colors = {"red", "blue", "green", "black", "white", "silver", "yellow", "orange"};
    p.cities = {"Sydney", "Berlin", "Paris", "London", "Tokyo", "Madrid", "Oslo", "Dublin"};
    p.models = {"Cullinan", "Phantom", "Ghost", "Wraith", "Dawn", "Spectre", "Corniche",
                "Camargue"};
    p.fillers = {
        {"horsepower", {"563", "601", "480", "325"}},
        {"engine", {"V12", "V8", "inline-six", "hybrid"}},
        {"top speed", {"155 mph", "186 mph", "130 mph"}},
        {"drivetrain", {"AWD", "RWD", "FWD"}},
        {"interior", {"leather", "alcantara", "walnut trim"}},
        {"mileage", {"12000 miles", "8500 miles", "31000 miles"}},
        {"vin", {"KX93A", "TR41B", "QL77C", "ZD05D"}},
        {"price", {"$341000", "$128500", "$97250"}},
        {"year", {"2021", "2022", "2023", "2024"}},
    };
    p.style = DescriptionStyle::prose;
    return p;
}

AttributePools toy_pools() {
    AttributePools p;
    std::vector<std::string> letters;
    for (char c = 'a'; c <= 'j'; ++c) letters.push_back(std::string(1, c));
    p.colors = letters;
    p.cities = letters;
    p.models = letters;
    p.fillers = {{"year", letters}, {"price", letters}};
    p.style = DescriptionStyle::tags;
    return p;
}

void check_pools(const backend::Backend& b, const AttributePools& pools) {
    if (pools.colors.empty()) throw config_error("color pool is empty");
    if (pools.cities.empty()) throw config_error("city pool is empty");
    if (pools.models.empty()) throw config_error("model pool is empty");
    for (const auto& word : pools.colors) {
        if (b.tokenize(word).size() != 1)
            throw config_error("color \"" + word + "\" is not a single token under backend " +
                               b.id());
        if (b.tokenize(" " + word).size() != 1)
            throw config_error("color \" " + word +
                               "\" (with leading space) is not a single token under backend " +
                               b.id());
    }
}

namespace {

std::uint64_t record_hash(const CarRecord& r) {
    std::string blob = r.color + '\x1f' + r.city + '\x1f' + r.model;
    for (const auto& [k, v] : r.filler) blob += '\x1f' + k + '\x1e' + v;
    return fnv1a64(blob);
}

const std::string& pick(SplitMix64& rng, const std::vector<std::string>& pool,
                        const char* which) {
    if (pool.empty()) throw config_error(std::string(which) + " pool is empty");
    return pool[static_cast<size_t>(rng.bounded(pool.size()))];
}

}  // namespace

CarRecord gen_car_record(const AttributePools& pools, std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, fnv1a64("car-record")));
    CarRecord r;
    r.color = pick(rng, pools.colors, "color");
    r.city = pick(rng, pools.cities, "city");
    r.model = pick(rng, pools.models, "model");
    for (const auto& [attr, values] : pools.fillers)
        r.filler.emplace_back(attr, pick(rng, values, attr.c_str()));
    return r;
}

std::vector<CarRecord> gen_car_records(const AttributePools& pools, std::uint64_t seed,
                                       size_t n) {
    std::vector<CarRecord> out;
    std::vector<std::uint64_t> seen;
    std::uint64_t sub = 0;
    while (out.size() < n) {
        if (sub > 64 * n + 4096)
            throw config_error("could not draw " + std::to_string(n) +
                               " distinct records; pools too small");
        CarRecord r = gen_car_record(pools, mix_seed(seed, sub++));
        std::uint64_t h = record_hash(r);
        bool dup = false;
        for (std::uint64_t s : seen)
            if (s == h) dup = true;
        if (dup) continue;
        seen.push_back(h);
        out.push_back(std::move(r));
    }
    return out;
}

JsonTarget render_json(const CarRecord& record) {
    if (record.color.empty() || record.city.empty() || record.model.empty())
        throw spec_error("record has an empty target attribute");
    const std::array<std::pair<std::string, std::string>, 3> attrs = {
        std::make_pair(std::string("color"), record.color),
        std::make_pair(std::string("city"), record.city),
        std::make_pair(std::string("model"), record.model)};
    JsonTarget t;
    t.text = "{";
    for (size_t i = 0; i < attrs.size(); ++i) {
        if (i > 0) t.text += ",";
        t.text += "\"";
        t.key_spans[i].begin = t.text.size();
        t.text += attrs[i].first;
        t.key_spans[i].end = t.text.size();
        t.text += "\":\"";
        t.value_spans[i].begin = t.text.size();
        t.text += attrs[i].second;
        t.value_spans[i].end = t.text.size();
        t.text += "\"";
    }
    t.text += "}";
    return t;
}

namespace {

// Reads `"word"` at pos, returns word, advances pos past the closing quote.
std::string read_quoted(const std::string& text, size_t& pos) {
    if (pos >= text.size() || text[pos] != '"')
        throw parse_error("json target: expected '\"' at byte " + std::to_string(pos));
    ++pos;
    size_t start = pos;
    while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\') throw parse_error("json target: escapes are not used");
        ++pos;
    }
    if (pos >= text.size()) throw parse_error("json target: unterminated string");
    std::string word = text.substr(start, pos - start);
    ++pos;
    return word;
}

void expect(const std::string& text, size_t& pos, char c) {
    if (pos >= text.size() || text[pos] != c)
        throw parse_error(std::string("json target: expected '") + c + "' at byte " +
                          std::to_string(pos));
    ++pos;
}

}  // namespace

std::tuple<std::string, std::string, std::string> parse_json_target(const std::string& text) {
    static const char* kKeys[3] = {"color", "city", "model"};
    size_t pos = 0;
    expect(text, pos, '{');
    std::array<std::string, 3> values;
    for (int i = 0; i < 3; ++i) {
        if (i > 0) expect(text, pos, ',');
        std::string key = read_quoted(text, pos);
        if (key != kKeys[i])
            throw parse_error("json target: key " + std::to_string(i + 1) + " is \"" + key +
                              "\", expected \"" + kKeys[i] + "\"");
        expect(text, pos, ':');
        values[static_cast<size_t>(i)] = read_quoted(text, pos);
        if (values[static_cast<size_t>(i)].empty())
            throw parse_error("json target: empty value for \"" + key + "\"");
    }
    expect(text, pos, '}');
    if (pos != text.size()) throw parse_error("json target: trailing text after '}'");
    return {values[0], values[1], values[2]};
}

std::string render_description(const CarRecord& record, DescriptionStyle style) {
    if (record.color.empty() || record.city.empty() || record.model.empty())
        throw spec_error("record has an empty target attribute");
    std::vector<std::pair<std::string, std::string>> attrs = {
        {"color", record.color}, {"city", record.city}, {"model", record.model}};
    for (const auto& f : record.filler) attrs.push_back(f);

    // Vary the attribute order per record so no fixed position gives the
    // answer away, but keep it a pure function of the record.
    SplitMix64 rng(mix_seed(record_hash(record), fnv1a64("description-order")));
    shuffle_in_place(rng, attrs);

    std::ostringstream out;
    if (style == DescriptionStyle::tags) {
        for (size_t i = 0; i < attrs.size(); ++i) {
            if (i > 0) out << " ";
            out << attrs[i].first << " " << attrs[i].second;
        }
    } else {
        out << "A car is listed for sale.";
        for (const auto& [name, value] : attrs)
            out << " The " << name << " is " << value << ".";
    }
    return out.str();
}

}  // namespace taskvec::compositional
