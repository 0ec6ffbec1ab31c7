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

#include "motif/ingest.hpp"
#include "motif/parallel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numeric>

namespace motif {

namespace {

using namespace std::chrono;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool read_fixed(std::string_view text, std::size_t pos, std::size_t len, T& out) {
    if (pos + len > text.size()) return false;
    const char* first = text.data() + pos;
    auto [p, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && p == first + len;
}

Date date_of_day_index(std::int64_t day) { return Date{sys_days{days{day}}}; }

}  // namespace

std::size_t Dataset::day_count(const std::string& household_id) const {
    auto it = households.find(household_id);
    return it == households.end() ? 0 : it->second.size();
}

std::size_t Dataset::total_days() const {
    std::size_t n = 0;
    for (const auto& [id, days] : households) n += days.size();
    return n;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.size() < 19) return std::nullopt;
    auto date = parse_date(text.substr(0, 10));
    if (!date || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
        return std::nullopt;
    }
    int hh = 0, mm = 0, ss = 0;
    if (!read_fixed(text, 11, 2, hh) || !read_fixed(text, 14, 2, mm) || !read_fixed(text, 17, 2, ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

    std::int64_t offset_seconds = 0;
    std::string_view zone = text.substr(19);
    if (zone == "Z" || zone.empty()) {
        offset_seconds = 0;
    } else if (zone.size() == 6 && (zone[0] == '+' || zone[0] == '-') && zone[3] == ':') {
        int oh = 0, om = 0;
        if (!read_fixed(zone, 1, 2, oh) || !read_fixed(zone, 4, 2, om) || oh > 23 || om > 59) {
            return std::nullopt;
        }
        offset_seconds = (oh * 3600 + om * 60) * (zone[0] == '-' ? -1 : 1);
    } else {
        return std::nullopt;
    }
    const auto base = sys_days{*date} + hours{hh} + minutes{mm} + seconds{ss};
    return Timestamp{base - seconds{offset_seconds}};
}

std::string format_timestamp(Timestamp t) {
    const auto day = floor<days>(t);
    const Date d{day};
    const auto secs = (t - day).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(d).c_str(),
                  static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60), static_cast<int>(secs % 60));
    return buf;
}

ParseResult parse_readings(std::istream& in, const CsvFormat& format) {
    ParseResult result;
    struct Row {
        RawReading reading;
        std::size_t line;
    };
    std::vector<Row> rows;

    std::string line;
    std::size_t line_no = 0;
    bool header_pending = format.has_header;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        ++result.rows;

        std::array<std::string_view, 3> fields;
        std::size_t count = 0;
        std::size_t start = 0;
        bool too_many = false;
        while (true) {
            const std::size_t pos = view.find(format.delimiter, start);
            const std::string_view field = view.substr(start, pos == std::string_view::npos ? pos : pos - start);
            if (count == fields.size()) {
                too_many = true;
                break;
            }
            fields[count++] = trim(field);
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        if (too_many || count != 3) {
            result.errors.push_back({line_no, "expected 3 fields (household_id, timestamp, watts)"});
            continue;
        }
        if (fields[0].empty()) {
            result.errors.push_back({line_no, "empty household id"});
            continue;
        }
        auto ts = parse_timestamp(fields[1]);
        if (!ts) {
            result.errors.push_back({line_no, "unparseable timestamp '" + std::string(fields[1]) + "'"});
            continue;
        }
        auto watts = parse_double(fields[2]);
        if (!watts || !std::isfinite(*watts)) {
            result.errors.push_back({line_no, "unparseable power '" + std::string(fields[2]) + "'"});
            continue;
        }
        if (*watts < 0.0) {
            result.errors.push_back({line_no, "negative power '" + std::string(fields[2]) + "'"});
            continue;
        }
        rows.push_back({RawReading{std::string(fields[0]), *ts, *watts}, line_no});
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.reading.household_id != b.reading.household_id) return a.reading.household_id < b.reading.household_id;
        return a.reading.timestamp < b.reading.timestamp;
    });
    result.readings.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!result.readings.empty() && rows[i].reading.household_id == result.readings.back().household_id &&
            rows[i].reading.timestamp == result.readings.back().timestamp) {
            result.errors.push_back({rows[i].line, "duplicate timestamp for household " + rows[i].reading.household_id});
            continue;
        }
        result.readings.push_back(std::move(rows[i].reading));
    }
    std::sort(result.errors.begin(), result.errors.end(),
              [](const RowError& a, const RowError& b) { return a.line < b.line; });
    return result;
}

AlignResult align_to_grid(std::span<const RawReading> readings, const AlignOptions& options) {
    struct DayAccum {
        std::array<double, kSlotsPerDay> mean{};
        std::array<std::int32_t, kSlotsPerDay> covered{};
        bool voided = false;
    };
    std::map<std::int64_t, DayAccum> accum;
    AlignResult result;
    if (readings.empty()) return result;

    const std::int64_t offset = duration_cast<seconds>(options.utc_offset).count();
    const std::int64_t max_gap = options.max_gap.count();
    auto local = [&](const RawReading& r) { return r.timestamp.time_since_epoch().count() + offset; };

    for (std::size_t i = 1; i < readings.size(); ++i) {
        const std::int64_t a = local(readings[i - 1]);
        const std::int64_t b = local(readings[i]);
        if (b <= a) {
            throw DataError("timestamps not strictly increasing for household " + readings[i].household_id);
        }
        if (b - a > max_gap) {
            for (std::int64_t d = floor_div(a, kSecondsPerDay); d <= floor_div(b - 1, kSecondsPerDay); ++d) {
                accum[d].voided = true;
            }
            continue;
        }
        const double power = readings[i].power;
        for (std::int64_t cell = floor_div(a, kSlotSeconds); cell <= floor_div(b - 1, kSlotSeconds); ++cell) {
            const std::int64_t cell_start = cell * kSlotSeconds;
            const std::int64_t overlap = std::min(b, cell_start + kSlotSeconds) - std::max(a, cell_start);
            auto& day = accum[floor_div(cell, kSlotsPerDay)];
            const auto slot = static_cast<std::size_t>(cell - floor_div(cell, kSlotsPerDay) * kSlotsPerDay);
            // overlap / 300 is exactly 1 for a full cell, so aligned input is a fixed point.
            day.mean[slot] += power * (static_cast<double>(overlap) / kSlotSeconds);
            day.covered[slot] += static_cast<std::int32_t>(overlap);
        }
    }

    for (const auto& [day_index, day] : accum) {
        const bool complete =
            !day.voided && std::all_of(day.covered.begin(), day.covered.end(), [](auto c) { return c == kSlotSeconds; });
        if (!complete) {
            // Days lying wholly inside a gap never had data; they are absent, not discarded.
            if (std::any_of(day.covered.begin(), day.covered.end(), [](auto c) { return c > 0; })) {
                ++result.discarded_days;
            }
            continue;
        }
        DaySeries series;
        series.household_id = readings.front().household_id;
        series.date = date_of_day_index(day_index);
        series.readings = Eigen::Map<const DayReadings>(day.mean.data());
        result.days.push_back(std::move(series));
    }
    return result;
}

double raw_energy(std::span<const RawReading> readings, Timestamp from, Timestamp to, std::chrono::seconds max_gap) {
    double energy = 0.0;
    for (std::size_t i = 1; i < readings.size(); ++i) {
        const auto a = std::max(readings[i - 1].timestamp, from);
        const auto b = std::min(readings[i].timestamp, to);
        if (readings[i].timestamp - readings[i - 1].timestamp > max_gap || b <= a) continue;
        energy += readings[i].power * static_cast<double>((b - a).count());
    }
    return energy;
}

std::vector<RawReading> to_raw_readings(std::span<const DaySeries> days, std::chrono::minutes utc_offset) {
    std::vector<RawReading> out;
    out.reserve(days.size() * (kSlotsPerDay + 1));
    std::optional<Timestamp> last;
    for (const auto& day : days) {
        const Timestamp start = Timestamp{sys_days{day.date}} - duration_cast<seconds>(utc_offset);
        if (!last || *last != start) out.push_back({day.household_id, start, day.readings[0]});
        for (int k = 0; k < kSlotsPerDay; ++k) {
            out.push_back({day.household_id, start + seconds{(k + 1) * kSlotSeconds}, day.readings[k]});
        }
        last = out.back().timestamp;
    }
    return out;
}

Dataset build_dataset(const std::vector<RawReading>& readings, const AlignOptions& options, IngestSummary* summary,
                      int threads) {
    std::map<std::string, std::vector<RawReading>> grouped;
    for (const auto& r : readings) grouped[r.household_id].push_back(r);
    for (auto& [id, rs] : grouped) {
        std::stable_sort(rs.begin(), rs.end(),
                         [](const RawReading& a, const RawReading& b) { return a.timestamp < b.timestamp; });
    }

    std::vector<const std::vector<RawReading>*> order;
    for (const auto& [id, rs] : grouped) order.push_back(&rs);
    std::vector<AlignResult> aligned(order.size());
    parallel_for(order.size(), threads, [&](std::size_t i) { aligned[i] = align_to_grid(*order[i], options); });

    Dataset data;
    IngestSummary s;
    for (auto& r : aligned) {
        s.days_discarded += r.discarded_days;
        if (r.days.empty()) continue;
        s.days_kept += r.days.size();
        const std::string id = r.days.front().household_id;
        data.households.emplace(id, std::move(r.days));
    }
    s.households = data.households.size();
    if (summary) {
        summary->households = s.households;
        summary->days_kept = s.days_kept;
        summary->days_discarded = s.days_discarded;
    }
    return data;
}

HolidayCalendar read_holidays(std::istream& in) {
    HolidayCalendar holidays;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        auto d = parse_date(view);
        if (!d) throw DataError("holiday calendar line " + std::to_string(line_no) + ": bad date '" + std::string(view) + "'");
        holidays.insert(*d);
    }
    return holidays;
}

void label_days(Dataset& data, const HolidayCalendar& holidays) {
    for (auto& [id, days] : data.households) {
        for (auto& day : days) {
            const bool weekend = is_weekend(day.date);
            const bool holiday = holidays.contains(day.date);
            day.labels.insert(weekend ? labels::kWeekend : labels::kWeekday);
            if (holiday) day.labels.insert(labels::kHoliday);
            if (!weekend && !holiday) day.labels.insert(labels::kWorkingDay);
        }
    }
}

Dataset filter_days(const Dataset& data, const std::set<std::string>& wanted, const HolidayCalendar& holidays) {
    Dataset labelled = data;
    label_days(labelled, holidays);
    Dataset out;
    for (auto& [id, days] : labelled.households) {
        std::vector<DaySeries> kept;
        for (auto& day : days) {
            if (std::includes(day.labels.begin(), day.labels.end(), wanted.begin(), wanted.end())) {
                kept.push_back(std::move(day));
            }
        }
        if (!kept.empty()) out.households.emplace(id, std::move(kept));
    }
    return out;
}

}  // namespace motif
