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

#include "motif/mine.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace motif {

namespace {

constexpr const char* kCatalogFormat = "motif-catalog";
constexpr int kCatalogVersion = 1;

using nlohmann::json;

json params_to_json(const ParameterSet& p) {
    return json{{"id", p.id()},
                {"alphabet_size", p.alphabet_size},
                {"motif_len", p.motif_len},
                {"variant", to_string(p.variant)},
                {"normalization", to_string(p.normalization)},
                {"compression", p.compression},
                {"range_mode", to_string(p.range_mode)}};
}

template <typename T>
T require(std::optional<T> v, const char* what) {
    if (!v) throw DataError(std::string("catalog header: bad ") + what);
    return *v;
}

ParameterSet params_from_json(const json& j) {
    ParameterSet p;
    p.alphabet_size = j.at("alphabet_size").get<int>();
    p.motif_len = j.at("motif_len").get<int>();
    p.variant = require(parse_variant(j.at("variant").get<std::string>()), "variant");
    p.normalization = require(parse_normalization(j.at("normalization").get<std::string>()), "normalization");
    p.compression = j.at("compression").get<bool>();
    p.range_mode = require(parse_range_mode(j.at("range_mode").get<std::string>()), "range_mode");
    return p;
}

}  // namespace

void write_catalog(std::ostream& out, const MotifCatalog& catalog) {
    json header{{"format", kCatalogFormat},
                {"version", kCatalogVersion},
                {"tool", std::string(kToolName) + " " + kToolVersion},
                {"params", params_to_json(catalog.params)},
                {"filters",
                 {{"min_range", catalog.filters.min_range}, {"middle_prefix_len", catalog.filters.middle_prefix_len}}},
                {"bands",
                 {{"mode", to_string(catalog.bands.mode)},
                  {"cutoffs", catalog.bands.cutoffs},
                  {"per_house_bands", catalog.bands.per_house_bands}}},
                {"day_counts", catalog.day_counts}};
    out << header.dump() << '\n';

    for (const auto& [id, motifs] : catalog.households) {
        for (const auto& [key, occurrences] : motifs) {
            json occ = json::array();
            for (const auto& o : occurrences) {
                occ.push_back({{"date", format_date(o.date)},
                               {"start_slot", o.start_slot},
                               {"window_range", o.window_range},
                               {"diff_range", o.diff_range}});
            }
            json line{{"household", id},
                      {"word", key.word.letters},
                      {"band", key.band ? json(*key.band) : json(nullptr)},
                      {"occurrences", std::move(occ)}};
            out << line.dump() << '\n';
        }
    }
    if (!out) throw DataError("failed writing catalog");
}

MotifCatalog read_catalog(std::istream& in) {
    MotifCatalog catalog;
    std::string line;
    if (!std::getline(in, line)) throw DataError("catalog file is empty");
    try {
        const json header = json::parse(line);
        if (header.value("format", "") != kCatalogFormat || header.value("version", 0) != kCatalogVersion) {
            throw DataError("not a motif catalog (bad header)");
        }
        catalog.params = params_from_json(header.at("params"));
        catalog.filters.min_range = header.at("filters").at("min_range").get<double>();
        catalog.filters.middle_prefix_len = header.at("filters").at("middle_prefix_len").get<int>();
        const json& bands = header.at("bands");
        catalog.bands.mode = require(parse_range_mode(bands.at("mode").get<std::string>()), "band mode");
        catalog.bands.cutoffs = bands.at("cutoffs").get<std::vector<double>>();
        catalog.bands.per_house_bands = bands.at("per_house_bands").get<int>();
        catalog.day_counts = header.at("day_counts").get<std::map<std::string, std::size_t>>();
    } catch (const json::exception& e) {
        throw DataError(std::string("catalog header: ") + e.what());
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            const auto id = j.at("household").get<std::string>();
            MotifKey key{SymbolWord{j.at("word").get<std::string>(), catalog.params.alphabet_size}, std::nullopt};
            if (!j.at("band").is_null()) key.band = j.at("band").get<int>();
            auto& occurrences = catalog.households[id][key];
            for (const auto& o : j.at("occurrences")) {
                auto date = parse_date(o.at("date").get<std::string>());
                if (!date) throw DataError("bad occurrence date");
                occurrences.push_back(
                    {*date, o.at("start_slot").get<int>(), o.at("window_range").get<double>(),
                     o.at("diff_range").get<double>()});
            }
            if (!catalog.day_counts.contains(id)) throw DataError("household " + id + " missing from header day counts");
        } catch (const json::exception& e) {
            throw DataError("catalog line " + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("catalog line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return catalog;
}

}  // namespace motif
