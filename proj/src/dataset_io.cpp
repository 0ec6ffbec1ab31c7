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

#include "motif/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>

namespace motif {

namespace {
constexpr const char* kDatasetFormat = "motif-dataset";
constexpr int kDatasetVersion = 1;
}  // namespace

void write_dataset(std::ostream& out, const Dataset& data, const std::string& config_json) {
    nlohmann::json header{{"format", kDatasetFormat},
                          {"version", kDatasetVersion},
                          {"tool", std::string(kToolName) + " " + kToolVersion},
                          {"config", nlohmann::json::parse(config_json)}};
    out << header.dump() << '\n';
    for (const auto& [id, days] : data.households) {
        for (const auto& day : days) {
            nlohmann::json line{{"household", id},
                                {"date", format_date(day.date)},
                                {"labels", day.labels},
                                {"readings", std::vector<double>(day.readings.begin(), day.readings.end())}};
            out << line.dump() << '\n';
        }
    }
    if (!out) throw DataError("failed writing dataset cache");
}

Dataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("dataset cache is empty");
    try {
        const auto header = nlohmann::json::parse(line);
        if (header.value("format", "") != kDatasetFormat || header.value("version", 0) != kDatasetVersion) {
            throw DataError("not a motif dataset cache (bad header)");
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("dataset cache header: ") + e.what());
    }

    Dataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            DaySeries day;
            day.household_id = j.at("household").get<std::string>();
            auto date = parse_date(j.at("date").get<std::string>());
            if (!date) throw DataError("bad date");
            day.date = *date;
            day.labels = j.value("labels", std::set<std::string>{});
            const auto values = j.at("readings").get<std::vector<double>>();
            if (values.size() != static_cast<std::size_t>(kSlotsPerDay)) throw DataError("expected 288 readings");
            day.readings = Eigen::Map<const DayReadings>(values.data());
            if ((day.readings < 0.0).any() || !day.readings.isFinite().all()) {
                throw DataError("negative or non-finite reading");
            }
            data.households[day.household_id].push_back(std::move(day));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("dataset cache line " + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("dataset cache line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (auto& [id, days] : data.households) {
        std::sort(days.begin(), days.end(), [](const DaySeries& a, const DaySeries& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < days.size(); ++i) {
            if (days[i].date == days[i - 1].date) {
                throw DataError("duplicate day " + format_date(days[i].date) + " for household " + id);
            }
        }
    }
    return data;
}

}  // namespace motif
