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

#include "motif/symbolize.hpp"
#include "motif/ingest.hpp"

#include <algorithm>
#include <limits>

namespace motif {

std::string_view to_string(Variant v) { return v == Variant::raw ? "raw" : "difference"; }

std::string_view to_string(Normalization n) {
    return n == Normalization::within_window ? "within_window" : "within_household";
}

std::string_view to_string(RangeMode m) {
    switch (m) {
        case RangeMode::none: return "none";
        case RangeMode::per_house: return "per_house";
        case RangeMode::appliance: return "appliance";
    }
    return "none";
}

std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "raw") return Variant::raw;
    if (s == "difference") return Variant::difference;
    return std::nullopt;
}

std::optional<Normalization> parse_normalization(std::string_view s) {
    if (s == "within_window" || s == "window") return Normalization::within_window;
    if (s == "within_household" || s == "household") return Normalization::within_household;
    return std::nullopt;
}

std::optional<RangeMode> parse_range_mode(std::string_view s) {
    if (s == "none") return RangeMode::none;
    if (s == "per_house") return RangeMode::per_house;
    if (s == "appliance") return RangeMode::appliance;
    return std::nullopt;
}

void ParameterSet::validate() const {
    if (alphabet_size % 2 == 0) {
        throw UsageError("alphabet size must be odd (got " + std::to_string(alphabet_size) +
                         "): an even alphabet has no middle letter, so 'no change' between readings would be "
                         "split between two symbols by noise");
    }
    if (alphabet_size < 3 || alphabet_size > 25) {
        throw UsageError("alphabet size must be between 3 and 25 (got " + std::to_string(alphabet_size) + ")");
    }
    if (motif_len < 2 || motif_len > kSlotsPerDay) {
        throw UsageError("motif length must be between 2 and 288 readings (got " + std::to_string(motif_len) + ")");
    }
}

std::string ParameterSet::id() const {
    std::string s = "a" + std::to_string(alphabet_size) + "_w" + std::to_string(motif_len) + "_";
    s += to_string(variant);
    s += normalization == Normalization::within_window ? "_window" : "_household";
    s += compression ? "_c_" : "_u_";
    s += to_string(range_mode);
    return s;
}

SymbolWord compress(const SymbolWord& word) {
    SymbolWord out{{}, word.alphabet_size};
    out.letters.reserve(word.letters.size());
    for (char c : word.letters) {
        if (out.letters.empty() || out.letters.back() != c) out.letters.push_back(c);
    }
    return out;
}

std::vector<DayReadings> normalize_household(std::span<const DaySeries> days) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& d : days) {
        lo = std::min(lo, d.readings.minCoeff());
        hi = std::max(hi, d.readings.maxCoeff());
    }
    std::vector<DayReadings> out;
    out.reserve(days.size());
    const double span = hi - lo;
    for (const auto& d : days) {
        if (span == 0.0) {
            out.push_back(DayReadings::Constant(0.5));
        } else {
            out.push_back((d.readings - lo) / span);
        }
    }
    return out;
}

}  // namespace motif
