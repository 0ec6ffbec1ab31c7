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

#include "motif/ingest.hpp"
#include "motif/symbolize.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace motif {

struct FilterConfig {
    double min_range = 100.0;   ///< watts
    int middle_prefix_len = 2;  ///< reject words opening with this many middle letters

    void validate() const;
    friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

/// How window ranges are split into bands. Appliance cutoffs are upper
/// bounds: a range lands in the first band whose cutoff is >= the range.
struct BandScheme {
    RangeMode mode = RangeMode::appliance;
    std::vector<double> cutoffs{300.0, 1000.0, 3000.0, 5000.0, 60000.0};
    int per_house_bands = 5;

    void validate() const;
    friend bool operator==(const BandScheme&, const BandScheme&) = default;
};

/// Range extremes over one household's windows that clear the minimum range.
struct HouseRangeStats {
    double min_range = 0.0;
    double max_range = 0.0;
};

/// Half-open slot interval [first, last) within a day.
struct SlotRange {
    int first = 0;
    int last = kSlotsPerDay;
};

/// A motif-length slice of one day. Never crosses midnight.
struct WindowView {
    const DaySeries* day = nullptr;
    int start_slot = 0;
    int length = 0;

    auto readings() const { return day->readings.segment(start_slot, length); }
};

constexpr int window_count(int period_len, int motif_len) {
    return period_len >= motif_len ? period_len - motif_len + 1 : 0;
}

/// Stride-1 windows over `period` (default: the whole day).
std::vector<WindowView> extract_windows(const DaySeries& day, int motif_len, SlotRange period = {});

struct WindowRanges {
    double window_range = 0.0;  ///< max - min of the readings
    double diff_range = 0.0;    ///< max - min of adjacent differences
};

template <typename Derived>
WindowRanges window_ranges(const Eigen::ArrayBase<Derived>& readings) {
    WindowRanges r;
    const Eigen::Index n = readings.size();
    if (n == 0) return r;
    r.window_range = readings.maxCoeff() - readings.minCoeff();
    if (n >= 2) {
        const auto diffs = (readings.tail(n - 1) - readings.head(n - 1)).eval();
        r.diff_range = diffs.maxCoeff() - diffs.minCoeff();
    }
    return r;
}

inline WindowRanges window_ranges(const WindowView& w) { return window_ranges(w.readings()); }

/// Band index for a window range, or nullopt when banding is off.
/// per_house needs `house`; throws DataError above the top appliance cutoff.
std::optional<int> band_for(double window_range, const BandScheme& scheme,
                            const std::optional<HouseRangeStats>& house = std::nullopt);

enum class Rejection { below_min_range, middle_prefix, monotone_increasing, monotone_decreasing };

std::string_view to_string(Rejection r);

struct Verdict {
    bool interesting = true;
    std::optional<Rejection> reason;
};

/// Applies the interestingness rules to a pre-compression word, in order:
/// minimum range, leading middle letters, then increases-only or
/// decreases-only. For raw words monotonicity is read off the letter
/// sequence; for difference words each letter is a change, so "increases
/// only" means every letter is at or above the middle and one is above it.
Verdict is_interesting(const SymbolWord& word, double window_range, const FilterConfig& filters,
                       Variant variant = Variant::raw);

struct MotifKey {
    SymbolWord word;
    std::optional<int> band;

    std::string label() const;  ///< "word" or "word/band"

    friend bool operator==(const MotifKey&, const MotifKey&) = default;
    friend auto operator<=>(const MotifKey& a, const MotifKey& b) {
        if (auto c = a.band <=> b.band; c != 0) return c;
        return a.word <=> b.word;
    }
};

struct Occurrence {
    Date date;
    int start_slot = 0;
    double window_range = 0.0;
    double diff_range = 0.0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

using HouseholdMotifs = std::map<MotifKey, std::vector<Occurrence>>;

struct MotifCatalog {
    ParameterSet params;
    FilterConfig filters;
    BandScheme bands;
    /// Every mined household with its day count, including households
    /// that produced no motifs.
    std::map<std::string, std::size_t> day_counts;
    std::map<std::string, HouseholdMotifs> households;

    std::size_t motif_count() const;
    std::size_t occurrence_count() const;

    friend bool operator==(const MotifCatalog&, const MotifCatalog&) = default;
};

/// Mines one household. Days must belong to the same household. The band
/// mode comes from `params.range_mode`; `scheme` supplies the cutoffs.
HouseholdMotifs mine_household(std::span<const DaySeries> days, const ParameterSet& params,
                               const FilterConfig& filters, const BandScheme& scheme);

/// Mines every household, in parallel across households. The result does
/// not depend on `threads`.
MotifCatalog mine_dataset(const Dataset& data, const ParameterSet& params, const FilterConfig& filters = {},
                          const BandScheme& scheme = {}, int threads = 1);

/// JSONL: a header line carrying the full configuration and day counts,
/// then one line per (household, word, band) with its occurrences.
void write_catalog(std::ostream& out, const MotifCatalog& catalog);
MotifCatalog read_catalog(std::istream& in);

}  // namespace motif
