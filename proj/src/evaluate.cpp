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

#include "motif/evaluate.hpp"
#include "motif/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

namespace motif {

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::per_day: return "per_day";
        case Measure::unique_days: return "unique_days";
        case Measure::pct_days: return "pct_days";
    }
    return "";
}

std::optional<Measure> parse_measure(std::string_view s) {
    for (Measure m : kAllMeasures) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

void RegionConfig::validate() const {
    if (!(y < x)) throw UsageError("region " + std::string(to_string(measure)) + ": Y must be below X");
    if (z < 1) throw UsageError("region " + std::string(to_string(measure)) + ": Z must be at least 1");
}

RegionConfig default_region(Measure m) {
    switch (m) {
        case Measure::per_day: return {m, 2.0, 0.3, 3};
        case Measure::unique_days: return {m, 65.0, 10.0, 3};
        case Measure::pct_days: return {m, 90.0, 20.0, 3};
    }
    return {};
}

std::vector<RegionConfig> default_regions() {
    std::vector<RegionConfig> out;
    for (Measure m : kAllMeasures) out.push_back(default_region(m));
    return out;
}

std::vector<RankedMotif> top_motifs(const HouseholdMotifs& motifs, std::size_t z) {
    std::vector<RankedMotif> ranked;
    ranked.reserve(motifs.size());
    for (const auto& [key, occ] : motifs) ranked.push_back({key, occ.size(), &occ});
    // Map iteration is already in (band, word) order, so a stable sort on
    // count alone applies the tie-break.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedMotif& a, const RankedMotif& b) { return a.count > b.count; });
    if (ranked.size() > z) ranked.resize(z);
    return ranked;
}

double measure_value(std::span<const Occurrence> occurrences, std::size_t day_count, Measure measure) {
    if (day_count == 0) throw std::invalid_argument("measure_value: household has no days");
    if (measure == Measure::per_day) return static_cast<double>(occurrences.size()) / static_cast<double>(day_count);
    std::set<Date> dates;
    for (const auto& o : occurrences) dates.insert(o.date);
    const auto unique = static_cast<double>(dates.size());
    return measure == Measure::unique_days ? unique : 100.0 * unique / static_cast<double>(day_count);
}

RankCurve rank_curve(const MotifCatalog& catalog, Measure measure, std::size_t extend_to) {
    RankCurve curve;
    curve.parameter_set_id = catalog.params.id();
    curve.measure = measure;
    std::vector<double> sums(extend_to, 0.0);
    curve.households.assign(extend_to, 0);

    for (const auto& [id, days] : catalog.day_counts) {
        auto it = catalog.households.find(id);
        if (days == 0 || it == catalog.households.end()) continue;
        const auto top = top_motifs(it->second, extend_to);
        for (std::size_t r = 0; r < top.size(); ++r) {
            sums[r] += measure_value(*top[r].occurrences, days, measure);
            ++curve.households[r];
        }
    }
    curve.values.resize(extend_to);
    for (std::size_t r = 0; r < extend_to; ++r) {
        if (curve.households[r] > 0) curve.values[r] = sums[r] / static_cast<double>(curve.households[r]);
    }
    return curve;
}

double region_score(const RankCurve& curve, const RegionConfig& region) {
    std::size_t inside = 0;
    for (std::size_t r = 0; r < static_cast<std::size_t>(region.z); ++r) {
        if (r < curve.values.size() && curve.values[r] && region.contains(*curve.values[r])) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(region.z);
}

std::vector<ParameterSet> standard_grid() {
    std::vector<ParameterSet> grid;
    for (RangeMode range : {RangeMode::none, RangeMode::per_house, RangeMode::appliance}) {
        for (Normalization norm : {Normalization::within_window, Normalization::within_household}) {
            for (Variant variant : {Variant::raw, Variant::difference}) {
                for (int alphabet : {5, 7, 9}) {
                    for (int len : {4, 6, 9, 12}) {
                        grid.push_back({alphabet, len, variant, norm, true, range});
                    }
                }
            }
        }
    }
    return grid;
}

SweepEntry score_catalog(const MotifCatalog& catalog, const SweepOptions& options) {
    SweepEntry entry;
    entry.params = catalog.params;
    std::size_t extend = options.extend_to;
    for (const auto& region : options.regions) extend = std::max(extend, static_cast<std::size_t>(region.z));

    double weighted = 0.0, total_weight = 0.0;
    for (std::size_t i = 0; i < options.regions.size(); ++i) {
        const auto& region = options.regions[i];
        entry.curves.push_back(rank_curve(catalog, region.measure, extend));
        entry.scores.push_back(region_score(entry.curves.back(), region));
        const double w = i < options.weights.size() ? options.weights[i] : 1.0;
        weighted += w * entry.scores.back();
        total_weight += w;
    }
    entry.mean_score = total_weight > 0.0 ? weighted / total_weight : 0.0;
    return entry;
}

SweepReport run_sweep(const Dataset& data, const std::vector<ParameterSet>& grid, const SweepOptions& options) {
    for (const auto& region : options.regions) region.validate();
    SweepReport report;
    report.regions = options.regions;
    report.entries.resize(grid.size());

    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        SweepEntry entry;
        try {
            entry = score_catalog(mine_dataset(data, grid[i], options.filters, options.bands, 1), options);
        } catch (const std::exception& e) {
            entry = SweepEntry{};
            entry.params = grid[i];
            entry.error = e.what();
        }
        entry.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.entries[i] = std::move(entry);
    });

    report.ranking.resize(grid.size());
    std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
    std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = report.entries[a];
        const auto& eb = report.entries[b];
        if (ea.error.has_value() != eb.error.has_value()) return !ea.error.has_value();
        if (ea.mean_score != eb.mean_score) return ea.mean_score > eb.mean_score;
        if (ea.params.alphabet_size != eb.params.alphabet_size) return ea.params.alphabet_size < eb.params.alphabet_size;
        return ea.params.motif_len < eb.params.motif_len;
    });
    return report;
}

}  // namespace motif
