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
#include <string>
#include <vector>

namespace motif {

/// A recurring household behaviour, overlaid on the base load.
struct ActivityTemplate {
    std::string name;
    std::vector<double> shape;     ///< watts added per slot, 2..12 slots
    double amplitude_jitter = 0.0;  ///< relative, uniform in [-j, +j]
    int time_jitter = 0;            ///< slots, uniform in [-j, +j]
    int target_slot = 0;
    double probability = 1.0;  ///< chance the activity happens on a given day

    /// Throws UsageError unless the shape both rises and falls (counting the
    /// implicit zero before and after it) and peaks at 100 W or more.
    void validate() const;
};

struct FridgeCycle {
    int period_slots = 12;
    double on_delta = 0.0;  ///< watts; 0 disables the fridge
    double duty = 0.5;
};

struct HouseholdProfile {
    std::string id;
    double base_load = 0.0;
    FridgeCycle fridge;
    double noise_sd = 0.0;           ///< marginal standard deviation of the background noise, W
    double noise_correlation = 0.0;  ///< lag-1 autocorrelation of the noise, in [0, 1)
    std::vector<ActivityTemplate> activities;
    std::uint64_t seed = 0;
};

struct TruthEntry {
    std::string household_id;
    Date date;
    std::string activity;
    int start_slot = 0;
    double amplitude_scale = 1.0;

    friend bool operator==(const TruthEntry&, const TruthEntry&) = default;
};

struct GroundTruthLog {
    std::vector<TruthEntry> entries;

    friend bool operator==(const GroundTruthLog&, const GroundTruthLog&) = default;
};

struct SynthResult {
    Dataset data;
    GroundTruthLog truth;
};

/// First `count` weekdays on or after `start`.
std::vector<Date> consecutive_working_days(Date start, int count);

inline constexpr Date kDefaultStartDate{std::chrono::year{2011}, std::chrono::March, std::chrono::day{1}};

/// Synthesizes `days` weekdays per household starting at `start`. Readings
/// are base load + fridge square wave + jittered activities + Gaussian
/// noise, clamped at 0 W. Each household draws from its own stream derived
/// from (seed, household index, profile seed), so output is identical for
/// any thread count.
SynthResult generate(const std::vector<HouseholdProfile>& profiles, int days, std::uint64_t seed,
                     Date start = kDefaultStartDate, int threads = 1);

/// The standard verification fixture: morning 15-minute 1.2 kW pulse and
/// a 30-minute evening two-level activity peaking at 2 kW, a 100 W fridge
/// on a 60-minute cycle and 20 W noise. Base loads and activity times vary
/// per household, drawn from `seed`.
std::vector<HouseholdProfile> desk_fixture(std::uint64_t seed, int households = 20);
inline constexpr int kDeskFixtureDays = 65;

void write_truth(std::ostream& out, const GroundTruthLog& truth, const std::string& config_json = "{}");
GroundTruthLog read_truth(std::istream& in);

/// Writes readings in the ingest CSV format (cell-end timestamps, with a
/// midnight anchor before each run of consecutive days).
void write_readings_csv(std::ostream& out, const Dataset& data, const std::string& config_json = "{}");

struct ActivityRecovery {
    std::string activity;
    std::size_t planted = 0;
    std::size_t recovered = 0;
    double recall = 0.0;
    std::vector<std::string> matched_motifs;  ///< "household:word/band", sorted
};

struct RecoveryReport {
    std::vector<ActivityRecovery> activities;  ///< sorted by name
};

/// An instance counts as recovered when an occurrence of one of its
/// household's top-`z` motifs starts on the same day within `slack` slots.
RecoveryReport recovery_report(const MotifCatalog& catalog, const GroundTruthLog& truth, int slack,
                               std::size_t z = 3);

void write_recovery_report(std::ostream& out, const RecoveryReport& report);

}  // namespace motif
