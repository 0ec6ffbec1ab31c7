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

#include "motif/core.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace motif {

/// A single meter sample. `power` is the mean power in watts over the
/// interval that ends at `timestamp` (the interval starts at the previous
/// sample of the same household).
struct RawReading {
    std::string household_id;
    Timestamp timestamp;
    double power = 0.0;

    friend bool operator==(const RawReading&, const RawReading&) = default;
};

struct DaySeries {
    std::string household_id;
    Date date;
    DayReadings readings = DayReadings::Zero();
    std::set<std::string> labels;
};

/// household id -> days in ascending date order.
struct Dataset {
    std::map<std::string, std::vector<DaySeries>> households;

    std::size_t day_count(const std::string& household_id) const;
    std::size_t total_days() const;
    bool empty() const { return households.empty(); }
};

namespace labels {
inline constexpr const char* kWorkingDay = "working-day";
inline constexpr const char* kWeekday = "weekday";
inline constexpr const char* kWeekend = "weekend";
inline constexpr const char* kHoliday = "holiday";
}  // namespace labels

// ---------------------------------------------------------------------------
// Parsing

struct CsvFormat {
    char delimiter = ',';
    bool has_header = false;
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct ParseResult {
    std::vector<RawReading> readings;  ///< sorted by (household, timestamp)
    std::vector<RowError> errors;
    std::size_t rows = 0;  ///< data rows seen, excluding header and comments
};

/// Accepts `YYYY-MM-DDTHH:MM:SS` with an optional `Z` or `+HH:MM` suffix;
/// a space may replace the `T`.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// Reads `household_id,timestamp,watts` rows. Lines starting with '#' are
/// comments. Malformed rows and repeated (household, timestamp) pairs are
/// reported in `errors` and left out of `readings`.
ParseResult parse_readings(std::istream& in, const CsvFormat& format = {});

// ---------------------------------------------------------------------------
// Grid alignment

struct AlignOptions {
    std::chrono::seconds max_gap{30 * 60};
    /// Local time = UTC + offset. Day boundaries fall on local midnight.
    std::chrono::minutes utc_offset{0};
};

struct AlignResult {
    std::vector<DaySeries> days;
    std::size_t discarded_days = 0;
};

/// Resamples one household's readings onto the 5-minute grid.
///
/// Each reading is held constant (in power) back to the previous reading;
/// the energy of every such interval is distributed over the grid cells it
/// overlaps, so whole-cell energy totals equal the raw energy exactly.
/// Intervals longer than `max_gap` carry no energy and void every day they
/// touch. Days with any cell not fully covered are dropped; `discarded_days`
/// counts those among them that held at least some data.
AlignResult align_to_grid(std::span<const RawReading> readings, const AlignOptions& options = {});

/// Energy in joules of the raw step function over [from, to).
double raw_energy(std::span<const RawReading> readings, Timestamp from, Timestamp to,
                  std::chrono::seconds max_gap = std::chrono::seconds{30 * 60});

/// Inverse of alignment: one reading per grid cell stamped at the cell end,
/// plus an anchor at local midnight wherever the previous day is absent.
std::vector<RawReading> to_raw_readings(std::span<const DaySeries> days,
                                        std::chrono::minutes utc_offset = std::chrono::minutes{0});

struct IngestSummary {
    std::size_t households = 0;
    std::size_t days_kept = 0;
    std::size_t days_discarded = 0;
    std::size_t rows = 0;
    std::size_t rows_rejected = 0;
};

/// Groups by household, aligns each (in parallel) and assembles a Dataset.
Dataset build_dataset(const std::vector<RawReading>& readings, const AlignOptions& options,
                      IngestSummary* summary = nullptr, int threads = 1);

// ---------------------------------------------------------------------------
// Day-type labels

using HolidayCalendar = std::set<Date>;

HolidayCalendar read_holidays(std::istream& in);

/// Adds weekday/weekend/holiday/working-day tags to every day.
void label_days(Dataset& data, const HolidayCalendar& holidays);

/// Labels, then keeps days carrying every tag in `wanted`.
Dataset filter_days(const Dataset& data, const std::set<std::string>& wanted,
                    const HolidayCalendar& holidays);

// ---------------------------------------------------------------------------
// Dataset cache (JSONL: header line, then one DaySeries per line)

void write_dataset(std::ostream& out, const Dataset& data, const std::string& config_json = "{}");
Dataset read_dataset(std::istream& in);

}  // namespace motif
