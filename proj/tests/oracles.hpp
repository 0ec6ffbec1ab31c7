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

// Straight-line reference implementations used by the unit tests and the
// acceptance run. They use plain loops over std::vector and share no code
// with the library beyond its public data types.

#pragma once

#include "motif/evaluate.hpp"
#include "motif/mine.hpp"
#include "motif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

inline int letter(double u, int alphabet) {
    int idx = static_cast<int>(std::floor(u * alphabet));
    if (idx == alphabet) idx = alphabet - 1;
    return idx;
}

/// The filter rules, re-stated: nullopt means the word is kept, otherwise
/// the name of the rule that rejects it.
inline std::optional<std::string> rejection(const std::string& word, int alphabet, double range, bool difference,
                                            double min_range = 100.0, int prefix = 2) {
    if (range < min_range) return "below-min-range";
    const char mid = static_cast<char>('a' + (alphabet - 1) / 2);
    if (static_cast<int>(word.size()) >= prefix && word.substr(0, static_cast<std::size_t>(prefix)) ==
                                                       std::string(static_cast<std::size_t>(prefix), mid)) {
        return "middle-prefix";
    }
    if (word.empty()) return std::nullopt;
    const char lo = *std::min_element(word.begin(), word.end());
    const char hi = *std::max_element(word.begin(), word.end());
    if (difference) {
        if (lo >= mid && hi > mid) return "monotone-increasing";
        if (hi <= mid && lo < mid) return "monotone-decreasing";
    } else {
        if (std::is_sorted(word.begin(), word.end()) && word.front() < word.back()) return "monotone-increasing";
        if (std::is_sorted(word.rbegin(), word.rend()) && word.front() > word.back()) return "monotone-decreasing";
    }
    return std::nullopt;
}

using Record = std::tuple<std::string, int, std::string, int>;  // word, band (-1 none), date, slot

/// Mines one household with nested loops: day, window start, reading.
inline std::vector<Record> mine(const std::vector<motif::DaySeries>& days, const motif::ParameterSet& p,
                                const std::vector<double>& cutoffs = {300, 1000, 3000, 5000, 60000},
                                double min_range = 100.0, int prefix = 2, int house_bands = 5) {
    const bool household = p.normalization == motif::Normalization::within_household;
    const bool difference = p.variant == motif::Variant::difference;
    double hlo = 1e300, hhi = -1e300;
    for (const auto& d : days) {
        for (int k = 0; k < motif::kSlotsPerDay; ++k) {
            hlo = std::min(hlo, d.readings[k]);
            hhi = std::max(hhi, d.readings[k]);
        }
    }

    struct Hit {
        std::string word;
        double range;
        std::string date;
        int slot;
    };
    std::vector<Hit> hits;
    double rlo = 1e300, rhi = -1e300;
    for (const auto& d : days) {
        for (int s = 0; s + p.motif_len <= motif::kSlotsPerDay; ++s) {
            std::vector<double> w;
            double mn = 1e300, mx = -1e300;
            for (int i = 0; i < p.motif_len; ++i) {
                const double v = d.readings[s + i];
                mn = std::min(mn, v);
                mx = std::max(mx, v);
                w.push_back(household ? (hhi > hlo ? (v - hlo) / (hhi - hlo) : 0.5) : v);
            }
            const double range = mx - mn;
            if (range >= min_range) {
                rlo = std::min(rlo, range);
                rhi = std::max(rhi, range);
            }
            std::string word;
            if (difference) {
                std::vector<double> dv;
                for (std::size_t i = 1; i < w.size(); ++i) dv.push_back(w[i] - w[i - 1]);
                double peak = 0.0;
                for (double v : dv) peak = std::max(peak, std::abs(v));
                for (double v : dv) {
                    const double scaled = household ? v : (peak == 0.0 ? 0.0 : v / peak);
                    word.push_back(static_cast<char>('a' + letter((scaled + 1.0) / 2.0, p.alphabet_size)));
                }
            } else {
                double lo = 1e300, hi = -1e300;
                for (double v : w) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                for (double v : w) {
                    const double u = household ? v : (hi == lo ? 0.5 : (v - lo) / (hi - lo));
                    word.push_back(static_cast<char>('a' + letter(u, p.alphabet_size)));
                }
            }
            if (rejection(word, p.alphabet_size, range, difference, min_range, prefix)) continue;
            if (p.compression) word.erase(std::unique(word.begin(), word.end()), word.end());
            hits.push_back({word, range, motif::format_date(d.date), s});
        }
    }

    std::vector<Record> out;
    for (const auto& h : hits) {
        int band = -1;
        if (p.range_mode == motif::RangeMode::appliance) {
            band = 0;
            while (cutoffs[static_cast<std::size_t>(band)] < h.range) ++band;
        } else if (p.range_mode == motif::RangeMode::per_house) {
            const double width = (rhi - rlo) / house_bands;
            band = width > 0 ? std::min(house_bands - 1, static_cast<int>(std::floor((h.range - rlo) / width))) : 0;
        }
        out.emplace_back(h.word, band, h.date, h.slot);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The same multiset read back from a catalog entry.
inline std::vector<Record> flatten(const motif::HouseholdMotifs& motifs) {
    std::vector<Record> out;
    for (const auto& [key, occ] : motifs) {
        for (const auto& o : occ) {
            out.emplace_back(key.word.letters, key.band ? *key.band : -1, motif::format_date(o.date), o.start_slot);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Mean measure value at each rank 1..n, averaged over households that
/// have a motif at that rank; nullopt where none does.
inline std::vector<std::optional<double>> rank_curve(const motif::MotifCatalog& catalog, motif::Measure m,
                                                     std::size_t n) {
    std::vector<double> sum(n, 0.0);
    std::vector<int> cnt(n, 0);
    for (const auto& [id, motifs] : catalog.households) {
        const double days = static_cast<double>(catalog.day_counts.at(id));
        std::vector<std::tuple<long, int, std::string, double>> keyed;  // -count, band, word, value
        for (const auto& [key, occ] : motifs) {
            std::vector<std::string> dates;
            for (const auto& o : occ) dates.push_back(motif::format_date(o.date));
            std::sort(dates.begin(), dates.end());
            const double unique = static_cast<double>(std::unique(dates.begin(), dates.end()) - dates.begin());
            double v = 0.0;
            if (m == motif::Measure::per_day) v = static_cast<double>(occ.size()) / days;
            if (m == motif::Measure::unique_days) v = unique;
            if (m == motif::Measure::pct_days) v = 100.0 * unique / days;
            keyed.emplace_back(-static_cast<long>(occ.size()), key.band ? *key.band : -1, key.word.letters, v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t r = 0; r < n && r < keyed.size(); ++r) {
            sum[r] += std::get<3>(keyed[r]);
            ++cnt[r];
        }
    }
    std::vector<std::optional<double>> out(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (cnt[r]) out[r] = sum[r] / cnt[r];
    }
    return out;
}

/// Recall per activity by pairing two sorted lists per (household, date):
/// planted starts and top-z occurrence starts, advancing a window pointer.
inline std::map<std::string, double> recall(const motif::MotifCatalog& catalog, const motif::GroundTruthLog& truth,
                                            int slack, std::size_t z) {
    std::map<std::pair<std::string, std::string>, std::vector<int>> found;
    for (const auto& [id, motifs] : catalog.households) {
        std::vector<std::tuple<long, int, std::string, const std::vector<motif::Occurrence>*>> keyed;
        for (const auto& [key, occ] : motifs) {
            keyed.emplace_back(-static_cast<long>(occ.size()), key.band ? *key.band : -1, key.word.letters, &occ);
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
                                                            std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b)); });
        for (std::size_t r = 0; r < z && r < keyed.size(); ++r) {
            for (const auto& o : *std::get<3>(keyed[r])) found[{id, motif::format_date(o.date)}].push_back(o.start_slot);
        }
    }
    for (auto& [k, v] : found) std::sort(v.begin(), v.end());

    std::map<std::pair<std::string, std::string>, std::vector<std::pair<int, std::string>>> planted;
    for (const auto& e : truth.entries) planted[{e.household_id, motif::format_date(e.date)}].push_back({e.start_slot, e.activity});

    std::map<std::string, std::pair<int, int>> tally;  // activity -> (recovered, total)
    for (auto& [k, starts] : planted) {
        std::sort(starts.begin(), starts.end());
        const auto it = found.find(k);
        std::size_t j = 0;
        for (const auto& [start, activity] : starts) {
            ++tally[activity].second;
            if (it == found.end()) continue;
            const auto& occ = it->second;
            while (j < occ.size() && occ[j] < start - slack) ++j;  // starts are ascending
            if (j < occ.size() && occ[j] <= start + slack) ++tally[activity].first;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [a, t] : tally) out[a] = static_cast<double>(t.first) / t.second;
    return out;
}

}  // namespace oracle
