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

#pragma once

#include "motif/evaluate.hpp"
#include "motif/ingest.hpp"
#include "motif/mine.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace motif {

/// Flat `key = value` file. A `[section]` line prefixes following keys
/// with `section.`; `#` and `;` start comments.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);

    std::optional<std::string> get(const std::string& key) const;
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Grid axes for `sweep --grid config`. Defaults reproduce standard_grid().
struct GridAxes {
    std::vector<int> alphabets{5, 7, 9};
    std::vector<int> motif_lens{4, 6, 9, 12};
    std::vector<Variant> variants{Variant::raw, Variant::difference};
    std::vector<Normalization> normalizations{Normalization::within_window, Normalization::within_household};
    std::vector<bool> compression{true};
    std::vector<RangeMode> range_modes{RangeMode::none, RangeMode::per_house, RangeMode::appliance};

    std::vector<ParameterSet> expand() const;
};

/// Everything a run needs. Defaults are the recommended method.
struct RunConfig {
    ParameterSet params;
    FilterConfig filters;
    BandScheme bands;
    std::vector<RegionConfig> regions = default_regions();
    std::vector<double> weights{1.0, 1.0, 1.0};
    GridAxes grid;

    CsvFormat csv;
    AlignOptions align;
    std::set<std::string> labels{labels::kWorkingDay};
    std::string holidays_path;

    std::uint64_t seed = 7;
    int threads = 1;
    int slack = 2;
    std::size_t extend_to = 10;

    /// Applies recognised keys; throws UsageError naming any unknown key or
    /// unparseable value.
    void apply(const KeyValueConfig& config);

    /// The full effective configuration as a compact JSON object.
    std::string to_json() const;
};

}  // namespace motif
