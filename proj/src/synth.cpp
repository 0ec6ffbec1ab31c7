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

#include "motif/synth.hpp"
#include "motif/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace motif {

namespace {

std::mt19937_64 household_stream(std::uint64_t seed, std::size_t index, std::uint64_t profile_seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(profile_seed),
                      static_cast<std::uint32_t>(profile_seed >> 32)};
    return std::mt19937_64(seq);
}

std::int64_t day_number(Date d) { return std::chrono::sys_days{d}.time_since_epoch().count(); }

}  // namespace

void ActivityTemplate::validate() const {
    if (shape.size() < 2 || shape.size() > 12) throw UsageError("activity " + name + ": shape must span 2 to 12 slots");
    bool rises = false, falls = false;
    double prev = 0.0;
    for (double v : shape) {
        rises = rises || v > prev;
        falls = falls || v < prev;
        prev = v;
    }
    falls = falls || prev > 0.0;
    if (!rises || !falls) throw UsageError("activity " + name + ": shape must both rise and fall");
    if (*std::max_element(shape.begin(), shape.end()) < 100.0) {
        throw UsageError("activity " + name + ": peak must be at least 100 W");
    }
    if (amplitude_jitter < 0.0 || amplitude_jitter >= 1.0 || time_jitter < 0 || probability < 0.0 ||
        probability > 1.0) {
        throw UsageError("activity " + name + ": jitter or probability out of range");
    }
}

std::vector<Date> consecutive_working_days(Date start, int count) {
    std::vector<Date> out;
    std::chrono::sys_days d{start};
    while (static_cast<int>(out.size()) < count) {
        if (!is_weekend(Date{d})) out.emplace_back(d);
        d += std::chrono::days{1};
    }
    return out;
}

SynthResult generate(const std::vector<HouseholdProfile>& profiles, int days, std::uint64_t seed, Date start,
                     int threads) {
    if (days < 1) throw UsageError("generate: days must be at least 1");
    for (const auto& p : profiles) {
        if (p.base_load < 0.0 || p.noise_sd < 0.0) throw UsageError("household " + p.id + ": negative load or noise");
        if (p.noise_correlation < 0.0 || p.noise_correlation >= 1.0) {
            throw UsageError("household " + p.id + ": noise correlation must lie in [0, 1)");
        }
        if (p.fridge.on_delta > 0.0 && p.fridge.period_slots < 1) throw UsageError("household " + p.id + ": bad fridge");
        for (const auto& a : p.activities) a.validate();
    }
    const auto dates = consecutive_working_days(start, days);

    std::vector<std::vector<DaySeries>> series(profiles.size());
    std::vector<std::vector<TruthEntry>> logs(profiles.size());
    parallel_for(profiles.size(), threads, [&](std::size_t h) {
        const HouseholdProfile& profile = profiles[h];
        auto rng = household_stream(seed, h, profile.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> noise(0.0, profile.noise_sd > 0.0 ? profile.noise_sd : 1.0);
        // AR(1) background: stationary with sd noise_sd, started in equilibrium.
        const double rho = profile.noise_correlation;
        const double innovation = std::sqrt(1.0 - rho * rho);
        double drift = 0.0;
        bool drift_started = false;

        const FridgeCycle& fridge = profile.fridge;
        const int period = std::max(fridge.period_slots, 1);
        const int phase = std::uniform_int_distribution<int>(0, period - 1)(rng);
        const int on_slots = static_cast<int>(std::lround(fridge.duty * period));

        for (const Date date : dates) {
            DaySeries day;
            day.household_id = profile.id;
            day.date = date;
            day.readings = DayReadings::Constant(profile.base_load);

            if (fridge.on_delta > 0.0) {
                const std::int64_t first = day_number(date) * kSlotsPerDay;
                for (int k = 0; k < kSlotsPerDay; ++k) {
                    if ((first + k + phase) % period < on_slots) day.readings[k] += fridge.on_delta;
                }
            }

            for (const auto& activity : profile.activities) {
                // Draw every variate even on inactive days so streams stay aligned.
                const double u = unit(rng);
                const int shift = std::uniform_int_distribution<int>(-activity.time_jitter, activity.time_jitter)(rng);
                const double scale = 1.0 + (2.0 * unit(rng) - 1.0) * activity.amplitude_jitter;
                if (u >= activity.probability) continue;
                const int len = static_cast<int>(activity.shape.size());
                const int slot = std::clamp(activity.target_slot + shift, 0, kSlotsPerDay - len);
                for (int k = 0; k < len; ++k) day.readings[slot + k] += scale * activity.shape[static_cast<std::size_t>(k)];
                logs[h].push_back({profile.id, date, activity.name, slot, scale});
            }

            if (profile.noise_sd > 0.0) {
                for (int k = 0; k < kSlotsPerDay; ++k) {
                    drift = drift_started ? rho * drift + innovation * noise(rng) : noise(rng);
                    drift_started = true;
                    day.readings[k] += drift;
                }
            }
            day.readings = day.readings.max(0.0);
            series[h].push_back(std::move(day));
        }
    });

    SynthResult result;
    for (std::size_t h = 0; h < profiles.size(); ++h) {
        result.data.households[profiles[h].id] = std::move(series[h]);
        for (auto& e : logs[h]) result.truth.entries.push_back(std::move(e));
    }
    std::stable_sort(result.truth.entries.begin(), result.truth.entries.end(),
                     [](const TruthEntry& a, const TruthEntry& b) {
                         if (a.household_id != b.household_id) return a.household_id < b.household_id;
                         if (a.date != b.date) return a.date < b.date;
                         return a.start_slot < b.start_slot;
                     });
    return result;
}

std::vector<HouseholdProfile> desk_fixture(std::uint64_t seed, int households) {
    std::mt19937_64 rng(seed);
    std::vector<HouseholdProfile> profiles;
    for (int i = 0; i < households; ++i) {
        HouseholdProfile p;
        char id[16];
        std::snprintf(id, sizeof id, "h%02d", i + 1);
        p.id = id;
        p.base_load = std::uniform_real_distribution<double>(150.0, 400.0)(rng);
        p.fridge = {12, 100.0, 0.5};
        p.noise_sd = 20.0;

        ActivityTemplate morning;
        morning.name = "morning";
        morning.shape = {1200.0, 1200.0, 1200.0};
        morning.amplitude_jitter = 0.1;
        morning.time_jitter = 2;
        morning.target_slot = std::uniform_int_distribution<int>(78, 96)(rng);  // 06:30 - 08:00
        morning.probability = 0.9;

        ActivityTemplate evening;
        evening.name = "evening";
        evening.shape = {1200.0, 1200.0, 2000.0, 2000.0, 2000.0, 1200.0};
        evening.amplitude_jitter = 0.1;
        evening.time_jitter = 2;
        evening.target_slot = std::uniform_int_distribution<int>(204, 228)(rng);  // 17:00 - 19:00
        evening.probability = 0.85;

        p.activities = {morning, evening};
        p.seed = rng();
        profiles.push_back(std::move(p));
    }
    return profiles;
}

void write_truth(std::ostream& out, const GroundTruthLog& truth, const std::string& config_json) {
    nlohmann::json header{{"format", "motif-truth"},
                          {"version", 1},
                          {"tool", std::string(kToolName) + " " + kToolVersion},
                          {"config", nlohmann::json::parse(config_json)}};
    out << header.dump() << '\n';
    for (const auto& e : truth.entries) {
        nlohmann::json line{{"household", e.household_id},
                            {"date", format_date(e.date)},
                            {"activity", e.activity},
                            {"start_slot", e.start_slot},
                            {"amplitude_scale", e.amplitude_scale}};
        out << line.dump() << '\n';
    }
    if (!out) throw DataError("failed writing truth log");
}

GroundTruthLog read_truth(std::istream& in) {
    GroundTruthLog truth;
    std::string line;
    if (!std::getline(in, line)) throw DataError("truth log is empty");
    try {
        if (nlohmann::json::parse(line).value("format", "") != "motif-truth") throw DataError("not a truth log");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("truth log header: ") + e.what());
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            auto date = parse_date(j.at("date").get<std::string>());
            if (!date) throw DataError("bad date");
            truth.entries.push_back({j.at("household").get<std::string>(), *date, j.at("activity").get<std::string>(),
                                     j.at("start_slot").get<int>(), j.at("amplitude_scale").get<double>()});
        } catch (const nlohmann::json::exception& e) {
            throw DataError("truth log line " + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("truth log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return truth;
}

void write_readings_csv(std::ostream& out, const Dataset& data, const std::string& config_json) {
    out << "# " << kToolName << ' ' << kToolVersion << " readings config=" << config_json << '\n';
    out << "# columns: household_id,timestamp,watts (mean power over the interval ending at timestamp)\n";
    for (const auto& [id, days] : data.households) {
        for (const auto& r : to_raw_readings(days)) {
            out << r.household_id << ',' << format_timestamp(r.timestamp) << ',' << format_double(r.power) << '\n';
        }
    }
    if (!out) throw DataError("failed writing readings");
}

RecoveryReport recovery_report(const MotifCatalog& catalog, const GroundTruthLog& truth, int slack, std::size_t z) {
    struct Hit {
        int slot;
        std::string label;
    };
    std::map<std::string, std::map<Date, std::vector<Hit>>> hits;
    for (const auto& [id, motifs] : catalog.households) {
        for (const auto& ranked : top_motifs(motifs, z)) {
            for (const auto& o : *ranked.occurrences) hits[id][o.date].push_back({o.start_slot, ranked.key.label()});
        }
    }

    std::map<std::string, ActivityRecovery> by_activity;
    std::map<std::string, std::set<std::string>> matched;
    for (const auto& e : truth.entries) {
        auto& rec = by_activity[e.activity];
        rec.activity = e.activity;
        ++rec.planted;
        bool found = false;
        auto h = hits.find(e.household_id);
        if (h != hits.end()) {
            auto d = h->second.find(e.date);
            if (d != h->second.end()) {
                for (const auto& hit : d->second) {
                    if (std::abs(hit.slot - e.start_slot) <= slack) {
                        found = true;
                        matched[e.activity].insert(e.household_id + ":" + hit.label);
                    }
                }
            }
        }
        if (found) ++rec.recovered;
    }

    RecoveryReport report;
    for (auto& [name, rec] : by_activity) {
        rec.recall = rec.planted ? static_cast<double>(rec.recovered) / static_cast<double>(rec.planted) : 0.0;
        rec.matched_motifs.assign(matched[name].begin(), matched[name].end());
        report.activities.push_back(std::move(rec));
    }
    return report;
}

void write_recovery_report(std::ostream& out, const RecoveryReport& report) {
    out << "activity,planted,recovered,recall,matched_motifs\n";
    for (const auto& a : report.activities) {
        out << a.activity << ',' << a.planted << ',' << a.recovered << ',' << format_double(a.recall) << ',';
        for (std::size_t i = 0; i < a.matched_motifs.size(); ++i) out << (i ? ";" : "") << a.matched_motifs[i];
        out << '\n';
    }
}

}  // namespace motif
