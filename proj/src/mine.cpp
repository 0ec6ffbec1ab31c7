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
#include "motif/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace motif {

void FilterConfig::validate() const {
    if (!(min_range > 0.0)) throw UsageError("minimum range must be positive");
    if (middle_prefix_len < 1) throw UsageError("middle prefix length must be at least 1");
}

void BandScheme::validate() const {
    if (cutoffs.empty()) throw UsageError("band cutoffs must not be empty");
    for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > cutoffs[i - 1])) throw UsageError("band cutoffs must be strictly ascending");
    }
    if (per_house_bands < 1) throw UsageError("per-house band count must be at least 1");
}

std::vector<WindowView> extract_windows(const DaySeries& day, int motif_len, SlotRange period) {
    if (motif_len < 1 || period.first < 0 || period.last > kSlotsPerDay || period.first > period.last) {
        throw std::invalid_argument("extract_windows: bad motif length or period");
    }
    std::vector<WindowView> out;
    const int n = window_count(period.last - period.first, motif_len);
    out.reserve(static_cast<std::size_t>(n));
    for (int s = period.first; s + motif_len <= period.last; ++s) out.push_back({&day, s, motif_len});
    return out;
}

std::optional<int> band_for(double window_range, const BandScheme& scheme, const std::optional<HouseRangeStats>& house) {
    switch (scheme.mode) {
        case RangeMode::none:
            return std::nullopt;
        case RangeMode::appliance: {
            auto it = std::lower_bound(scheme.cutoffs.begin(), scheme.cutoffs.end(), window_range);
            if (it == scheme.cutoffs.end()) {
                throw DataError("window range " + format_double(window_range) + " W exceeds the top band cutoff " +
                                format_double(scheme.cutoffs.back()) + " W");
            }
            return static_cast<int>(it - scheme.cutoffs.begin());
        }
        case RangeMode::per_house: {
            if (!house) throw std::invalid_argument("band_for: per-house banding needs house range stats");
            const double width = (house->max_range - house->min_range) / scheme.per_house_bands;
            if (!(width > 0.0)) return 0;
            const int idx = static_cast<int>(std::floor((window_range - house->min_range) / width));
            return std::clamp(idx, 0, scheme.per_house_bands - 1);
        }
    }
    return std::nullopt;
}

std::string_view to_string(Rejection r) {
    switch (r) {
        case Rejection::below_min_range: return "below-min-range";
        case Rejection::middle_prefix: return "middle-prefix";
        case Rejection::monotone_increasing: return "monotone-increasing";
        case Rejection::monotone_decreasing: return "monotone-decreasing";
    }
    return "";
}

Verdict is_interesting(const SymbolWord& word, double window_range, const FilterConfig& filters, Variant variant) {
    if (window_range < filters.min_range) return {false, Rejection::below_min_range};

    const int middle = word.middle();
    const auto prefix = static_cast<std::size_t>(filters.middle_prefix_len);
    if (word.size() >= prefix) {
        bool all_middle = true;
        for (std::size_t i = 0; i < prefix; ++i) all_middle = all_middle && word.index(i) == middle;
        if (all_middle) return {false, Rejection::middle_prefix};
    }

    bool rises = false, falls = false;
    if (variant == Variant::difference) {
        for (std::size_t i = 0; i < word.size(); ++i) {
            rises = rises || word.index(i) > middle;
            falls = falls || word.index(i) < middle;
        }
    } else {
        for (std::size_t i = 1; i < word.size(); ++i) {
            rises = rises || word.index(i) > word.index(i - 1);
            falls = falls || word.index(i) < word.index(i - 1);
        }
    }
    if (rises && !falls) return {false, Rejection::monotone_increasing};
    if (falls && !rises) return {false, Rejection::monotone_decreasing};
    return {true, std::nullopt};
}

std::string MotifKey::label() const {
    return band ? word.letters + "/" + std::to_string(*band) : word.letters;
}

std::size_t MotifCatalog::motif_count() const {
    std::size_t n = 0;
    for (const auto& [id, motifs] : households) n += motifs.size();
    return n;
}

std::size_t MotifCatalog::occurrence_count() const {
    std::size_t n = 0;
    for (const auto& [id, motifs] : households) {
        for (const auto& [key, occ] : motifs) n += occ.size();
    }
    return n;
}

HouseholdMotifs mine_household(std::span<const DaySeries> days, const ParameterSet& params,
                               const FilterConfig& filters, const BandScheme& scheme) {
    struct Candidate {
        SymbolWord word;
        Occurrence occurrence;
    };
    std::vector<Candidate> candidates;
    // Per-house bands span the ranges of every window that clears the
    // minimum range, whatever the later rules decide.
    HouseRangeStats seen{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    std::vector<DayReadings> normalized;
    const bool household_norm = params.normalization == Normalization::within_household;
    if (household_norm) normalized = normalize_household(days);

    const int len = params.motif_len;
    for (std::size_t d = 0; d < days.size(); ++d) {
        const DaySeries& day = days[d];
        for (int s = 0; s + len <= kSlotsPerDay; ++s) {
            const auto raw = day.readings.segment(s, len);
            const WindowRanges ranges = window_ranges(raw);
            if (ranges.window_range < filters.min_range) continue;  // cheapest rule first
            seen.min_range = std::min(seen.min_range, ranges.window_range);
            seen.max_range = std::max(seen.max_range, ranges.window_range);
            SymbolWord word = household_norm ? window_word(normalized[d].segment(s, len), params)
                                             : window_word(raw, params);
            if (!is_interesting(word, ranges.window_range, filters, params.variant).interesting) continue;
            if (params.compression) word = compress(word);
            candidates.push_back({std::move(word), {day.date, s, ranges.window_range, ranges.diff_range}});
        }
    }

    BandScheme effective = scheme;
    effective.mode = params.range_mode;
    std::optional<HouseRangeStats> stats;
    if (effective.mode == RangeMode::per_house && !candidates.empty()) stats = seen;

    HouseholdMotifs motifs;
    for (auto& c : candidates) {
        std::optional<int> band;
        try {
            band = band_for(c.occurrence.window_range, effective, stats);
        } catch (const DataError& e) {
            throw DataError("household " + days.front().household_id + ", " + format_date(c.occurrence.date) +
                            " slot " + std::to_string(c.occurrence.start_slot) + ": " + e.what());
        }
        motifs[MotifKey{std::move(c.word), band}].push_back(c.occurrence);
    }
    return motifs;
}

MotifCatalog mine_dataset(const Dataset& data, const ParameterSet& params, const FilterConfig& filters,
                          const BandScheme& scheme, int threads) {
    params.validate();
    filters.validate();
    scheme.validate();

    MotifCatalog catalog;
    catalog.params = params;
    catalog.filters = filters;
    catalog.bands = scheme;
    catalog.bands.mode = params.range_mode;

    std::vector<const std::pair<const std::string, std::vector<DaySeries>>*> order;
    for (const auto& entry : data.households) order.push_back(&entry);

    std::vector<HouseholdMotifs> mined(order.size());
    parallel_for(order.size(), threads,
                 [&](std::size_t i) { mined[i] = mine_household(order[i]->second, params, filters, scheme); });

    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string& id = order[i]->first;
        catalog.day_counts[id] = order[i]->second.size();
        if (!mined[i].empty()) catalog.households.emplace(id, std::move(mined[i]));
    }
    return catalog;
}

}  // namespace motif
