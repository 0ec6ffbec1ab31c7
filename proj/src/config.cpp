/**
 * Copyright (c) 2026 The meter-motif authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "motif/config.hpp"

#include <json.hpp>

#include <functional>
#include <istream>

namespace motif {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto pos = s.find(',', start);
        if (pos == std::string::npos) pos = s.size();
        auto item = trim(std::string_view(s).substr(start, pos - start));
        if (!item.empty()) out.push_back(item);
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw UsageError("config key '" + key + "': cannot parse '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
    auto d = parse_double(v);
    if (!d) bad_value(key, v);
    return *d;
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != static_cast<int>(d)) bad_value(key, v);
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    bad_value(key, v);
}

template <typename T, typename Parse>
std::vector<T> to_list(const std::string& key, const std::string& v, Parse parse) {
    std::vector<T> out;
    for (const auto& item : split_list(v)) out.push_back(parse(key, item));
    if (out.empty()) bad_value(key, v);
    return out;
}

template <typename Enum>
Enum to_enum(const std::string& key, const std::string& v, std::optional<Enum> (*parse)(std::string_view)) {
    auto e = parse(v);
    if (!e) bad_value(key, v);
    return *e;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig config;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s.front() == '#' || s.front() == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw UsageError("config line " + std::to_string(line_no) + ": unterminated section");
            section = trim(std::string_view(s).substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(std::string_view(s).substr(0, eq));
        std::string value = trim(std::string_view(s).substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
        config.values_[section.empty() ? key : section + "." + key] = value;
    }
    return config;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::vector<ParameterSet> GridAxes::expand() const {
    std::vector<ParameterSet> grid;
    for (RangeMode range : range_modes) {
        for (Normalization norm : normalizations) {
            for (Variant variant : variants) {
                for (bool compressed : compression) {
                    for (int alphabet : alphabets) {
                        for (int len : motif_lens) grid.push_back({alphabet, len, variant, norm, compressed, range});
                    }
                }
            }
        }
    }
    return grid;
}

void RunConfig::apply(const KeyValueConfig& config) {
    using Setter = std::function<void(const std::string&, const std::string&)>;
    std::map<std::string, Setter> setters{
        {"mine.alphabet", [&](auto& k, auto& v) { params.alphabet_size = to_int(k, v); }},
        {"mine.motif_len", [&](auto& k, auto& v) { params.motif_len = to_int(k, v); }},
        {"mine.variant", [&](auto& k, auto& v) { params.variant = to_enum(k, v, parse_variant); }},
        {"mine.normalization", [&](auto& k, auto& v) { params.normalization = to_enum(k, v, parse_normalization); }},
        {"mine.compress", [&](auto& k, auto& v) { params.compression = to_bool(k, v); }},
        {"mine.range_mode", [&](auto& k, auto& v) { params.range_mode = to_enum(k, v, parse_range_mode); }},
        {"filter.min_range", [&](auto& k, auto& v) { filters.min_range = to_double(k, v); }},
        {"filter.middle_prefix_len", [&](auto& k, auto& v) { filters.middle_prefix_len = to_int(k, v); }},
        {"bands.cutoffs", [&](auto& k, auto& v) { bands.cutoffs = to_list<double>(k, v, to_double); }},
        {"bands.per_house_bands", [&](auto& k, auto& v) { bands.per_house_bands = to_int(k, v); }},
        {"sweep.alphabets", [&](auto& k, auto& v) { grid.alphabets = to_list<int>(k, v, to_int); }},
        {"sweep.motif_lens", [&](auto& k, auto& v) { grid.motif_lens = to_list<int>(k, v, to_int); }},
        {"sweep.variants",
         [&](auto& k, auto& v) {
             grid.variants = to_list<Variant>(k, v, [](auto& kk, auto& vv) { return to_enum(kk, vv, parse_variant); });
         }},
        {"sweep.normalizations",
         [&](auto& k, auto& v) {
             grid.normalizations = to_list<Normalization>(
                 k, v, [](auto& kk, auto& vv) { return to_enum(kk, vv, parse_normalization); });
         }},
        {"sweep.compression", [&](auto& k, auto& v) { grid.compression = to_list<bool>(k, v, to_bool); }},
        {"sweep.range_modes",
         [&](auto& k, auto& v) {
             grid.range_modes =
                 to_list<RangeMode>(k, v, [](auto& kk, auto& vv) { return to_enum(kk, vv, parse_range_mode); });
         }},
        {"sweep.extend_to", [&](auto& k, auto& v) { extend_to = static_cast<std::size_t>(to_int(k, v)); }},
        {"ingest.delimiter",
         [&](auto& k, auto& v) {
             if (v.size() != 1) bad_value(k, v);
             csv.delimiter = v[0];
         }},
        {"ingest.header", [&](auto& k, auto& v) { csv.has_header = to_bool(k, v); }},
        {"ingest.max_gap_minutes", [&](auto& k, auto& v) { align.max_gap = std::chrono::minutes{to_int(k, v)}; }},
        {"ingest.utc_offset_minutes", [&](auto& k, auto& v) { align.utc_offset = std::chrono::minutes{to_int(k, v)}; }},
        {"ingest.labels",
         [&](auto& k, auto& v) {
             auto items = split_list(v);
             labels = std::set<std::string>(items.begin(), items.end());
             if (labels.contains("any")) labels.clear();
             (void)k;
         }},
        {"ingest.holidays", [&](auto&, auto& v) { holidays_path = v; }},
        {"run.seed", [&](auto& k, auto& v) { seed = static_cast<std::uint64_t>(to_double(k, v)); }},
        {"run.threads", [&](auto& k, auto& v) { threads = to_int(k, v); }},
        {"score.slack", [&](auto& k, auto& v) { slack = to_int(k, v); }},
    };
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const std::string prefix = "region." + std::string(to_string(regions[i].measure)) + ".";
        setters[prefix + "x"] = [this, i](auto& k, auto& v) { regions[i].x = to_double(k, v); };
        setters[prefix + "y"] = [this, i](auto& k, auto& v) { regions[i].y = to_double(k, v); };
        setters[prefix + "z"] = [this, i](auto& k, auto& v) { regions[i].z = to_int(k, v); };
        setters[prefix + "weight"] = [this, i](auto& k, auto& v) {
            if (weights.size() <= i) weights.resize(i + 1, 1.0);
            weights[i] = to_double(k, v);
        };
    }

    for (const auto& [key, value] : config.values()) {
        auto it = setters.find(key);
        if (it == setters.end()) throw UsageError("unknown config key '" + key + "'");
        it->second(key, value);
    }
}

std::string RunConfig::to_json() const {
    nlohmann::json regions_json = nlohmann::json::object();
    for (std::size_t i = 0; i < regions.size(); ++i) {
        regions_json[std::string(to_string(regions[i].measure))] = {
            {"x", regions[i].x}, {"y", regions[i].y}, {"z", regions[i].z}, {"weight", i < weights.size() ? weights[i] : 1.0}};
    }
    nlohmann::json j{
        {"params",
         {{"id", params.id()},
          {"alphabet_size", params.alphabet_size},
          {"motif_len", params.motif_len},
          {"variant", to_string(params.variant)},
          {"normalization", to_string(params.normalization)},
          {"compression", params.compression},
          {"range_mode", to_string(params.range_mode)}}},
        {"filters", {{"min_range", filters.min_range}, {"middle_prefix_len", filters.middle_prefix_len}}},
        {"bands", {{"cutoffs", bands.cutoffs}, {"per_house_bands", bands.per_house_bands}}},
        {"regions", regions_json},
        {"ingest",
         {{"delimiter", std::string(1, csv.delimiter)},
          {"header", csv.has_header},
          {"max_gap_minutes", std::chrono::duration_cast<std::chrono::minutes>(align.max_gap).count()},
          {"utc_offset_minutes", align.utc_offset.count()},
          {"labels", labels},
          {"holidays", holidays_path}}},
        {"seed", seed},
        {"slack", slack},
        {"extend_to", extend_to}};
    return j.dump();
}

}  // namespace motif
