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

#include "motif/mine.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace motif {

enum class Measure {
    per_day,      ///< occurrences per day of data
    unique_days,  ///< distinct days carrying the motif
    pct_days,     ///< distinct days as a percentage of the household's days
};

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view s);
inline constexpr Measure kAllMeasures[] = {Measure::per_day, Measure::unique_days, Measure::pct_days};

/// Interest region for one measure: values in [y, x] over ranks 1..z.
struct RegionConfig {
    Measure measure = Measure::per_day;
    double x = 2.0;
    double y = 0.3;
    int z = 3;

    void validate() const;
    bool contains(double value) const { return value >= y && value <= x; }

    friend bool operator==(const RegionConfig&, const RegionConfig&) = default;
};

/// per_day (2, 0.3, 3), unique_days (65, 10, 3), pct_days (90, 20, 3).
RegionConfig default_region(Measure m);
std::vector<RegionConfig> default_regions();

struct RankedMotif {
    MotifKey key;
    std::size_t count = 0;
    const std::vector<Occurrence>* occurrences = nullptr;
};

/// Most frequent motifs first; ties by band then word. At most `z` entries.
std::vector<RankedMotif> top_motifs(const HouseholdMotifs& motifs, std::size_t z);

double measure_value(std::span<const Occurrence> occurrences, std::size_t day_count, Measure measure);

/// Mean measure value at each rank, over the households that have a motif
/// at that rank. Ranks no household reaches hold nullopt.
struct RankCurve {
    std::string parameter_set_id;
    Measure measure = Measure::per_day;
    std::vector<std::optional<double>> values;  ///< index 0 is rank 1
    std::vector<std::size_t> households;        ///< contributors per rank
};

RankCurve rank_curve(const MotifCatalog& catalog, Measure measure, std::size_t extend_to = 10);

/// Fraction of ranks 1..z whose value lies in the region. Undefined ranks
/// count as outside.
double region_score(const RankCurve& curve, const RegionConfig& region);

// ---------------------------------------------------------------------------
// Parameter sweep

/// alphabet {5,7,9} x motif length {4,6,9,12} x {raw, difference} x
/// {within_window, within_household} x compressed x {none, per_house, appliance}.
std::vector<ParameterSet> standard_grid();

struct SweepOptions {
    FilterConfig filters;
    BandScheme bands;
    std::vector<RegionConfig> regions = default_regions();
    std::vector<double> weights;  ///< per region; empty means equal weights
    std::size_t extend_to = 10;
    int threads = 1;
};

struct SweepEntry {
    ParameterSet params;
    std::vector<RankCurve> curves;  ///< one per region, same order
    std::vector<double> scores;     ///< one per region, same order
    double mean_score = 0.0;
    double wall_seconds = 0.0;
    std::optional<std::string> error;
};

struct SweepReport {
    std::vector<RegionConfig> regions;
    std::vector<SweepEntry> entries;   ///< grid order
    std::vector<std::size_t> ranking;  ///< indices into entries, best first
};

/// Scores a single catalog against the regions (no mining).
SweepEntry score_catalog(const MotifCatalog& catalog, const SweepOptions& options);

/// Mines and scores every grid point (in parallel across points). Failed
/// points keep their error and rank last. Ranking: mean region score
/// descending, then smaller alphabet, then shorter motif, then grid order.
SweepReport run_sweep(const Dataset& data, const std::vector<ParameterSet>& grid, const SweepOptions& options);

// ---------------------------------------------------------------------------
// Report files

/// Plot data: region rows `measure,x,y,z`, then data rows
/// `param_set_id,measure,rank,mean_value,in_region`. Missing values are NA.
void emit_plot_data(const SweepReport& report, std::ostream& out, const std::string& config_json = "{}");

/// `param_set_id,mean_region_score,<score per measure>...,status`, best first.
void emit_summary(const SweepReport& report, std::ostream& out, const std::string& config_json = "{}");

/// `param_set_id,measure,rank,households`: how many households contributed
/// to each curve point.
void emit_coverage(const SweepReport& report, std::ostream& out, const std::string& config_json = "{}");

/// `param_set_id,wall_seconds`. Kept apart from the other files, which are
/// byte-reproducible.
void emit_timing(const SweepReport& report, std::ostream& out);

struct PlotRow {
    std::string param_set_id;
    Measure measure = Measure::per_day;
    int rank = 0;
    std::optional<double> mean_value;
    bool in_region = false;
};

struct PlotData {
    std::vector<RegionConfig> regions;
    std::vector<PlotRow> rows;
};

PlotData parse_plot_data(std::istream& in);

}  // namespace motif
