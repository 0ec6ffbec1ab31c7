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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace motif;
using namespace std::chrono;

namespace {

constexpr Date kDay{year{2011}, March, day{1}};  // a Tuesday

Timestamp at(Date d, int h, int m, int s = 0) { return Timestamp{sys_days{d} + hours{h} + minutes{m} + seconds{s}}; }

// Power held over (t_prev, t] for second [s, s+1), found by scanning the
// samples directly. Returns nullopt when the second is not covered.
std::optional<double> power_at_second(const std::vector<RawReading>& rs, Timestamp s) {
    for (std::size_t i = 1; i < rs.size(); ++i) {
        if (rs[i - 1].timestamp <= s && s + seconds{1} <= rs[i].timestamp) return rs[i].power;
    }
    return std::nullopt;
}

// Mean power of every 5-minute cell of `d`, integrated one second at a time.
std::vector<double> brute_force_cells(const std::vector<RawReading>& rs, Date d) {
    std::vector<double> cells(kSlotsPerDay, 0.0);
    for (int k = 0; k < kSlotsPerDay; ++k) {
        double joules = 0.0;
        for (int s = 0; s < kSlotSeconds; ++s) {
            joules += power_at_second(rs, Timestamp{sys_days{d}} + seconds{k * kSlotSeconds + s}).value();
        }
        cells[static_cast<std::size_t>(k)] = joules / kSlotSeconds;
    }
    return cells;
}

std::vector<RawReading> aligned_day(Date d, double watts, const std::string& id = "h") {
    std::vector<RawReading> rs;
    for (int k = 0; k <= kSlotsPerDay; ++k) rs.push_back({id, Timestamp{sys_days{d}} + seconds{k * kSlotSeconds}, watts});
    return rs;
}

}  // namespace

TEST_CASE("timestamps parse in UTC and with offsets") {
    CHECK(parse_timestamp("2011-03-01T13:02:00") == at(kDay, 13, 2));
    CHECK(parse_timestamp("2011-03-01 13:02:00Z") == at(kDay, 13, 2));
    CHECK(parse_timestamp("2011-03-01T14:02:00+01:00") == at(kDay, 13, 2));
    CHECK(parse_timestamp("2011-03-01T12:32:00-00:30") == at(kDay, 13, 2));
    CHECK_FALSE(parse_timestamp("2011-03-01T24:00:00"));
    CHECK_FALSE(parse_timestamp("2011-02-30T10:00:00"));
    CHECK_FALSE(parse_timestamp("2011-03-01T10:00"));
    CHECK_FALSE(parse_timestamp("2011-03-01T10:00:00+1"));
    CHECK(format_timestamp(at(kDay, 13, 2, 7)) == "2011-03-01T13:02:07Z");
}

TEST_CASE("parse_readings reports bad rows and duplicates by line") {
    std::istringstream in(
        "# a comment\n"
        "id,ts,w\n"
        "h1,2011-03-01T00:05:00,10\n"
        "h1,2011-03-01T00:00:00,5\n"
        "h1,not-a-time,5\n"
        "h1,2011-03-01T00:10:00,abc\n"
        "h1,2011-03-01T00:10:00,-3\n"
        ",2011-03-01T00:10:00,3\n"
        "h1,2011-03-01T00:05:00,11\n"
        "h1,2011-03-01T00:15:00,1,extra\n");
    const auto r = parse_readings(in, {',', true});
    CHECK(r.rows == 8);
    REQUIRE(r.readings.size() == 2);
    CHECK(r.readings[0].timestamp == at(kDay, 0, 0));
    CHECK(r.readings[1].power == 10.0);
    REQUIRE(r.errors.size() == 6);
    std::vector<std::size_t> lines;
    for (const auto& e : r.errors) lines.push_back(e.line);
    CHECK(lines == std::vector<std::size_t>{5, 6, 7, 8, 9, 10});
}

TEST_CASE("parse_readings honours a custom delimiter") {
    std::istringstream in("h1;2011-03-01T00:05:00;10\n");
    const auto r = parse_readings(in, {';', false});
    REQUIRE(r.readings.size() == 1);
    CHECK(r.errors.empty());
}

TEST_CASE("aligned constant input is a fixed point") {
    const auto rs = aligned_day(kDay, 500.0);
    const auto result = align_to_grid(rs);
    REQUIRE(result.days.size() == 1);
    CHECK(result.discarded_days == 0);
    CHECK(result.days[0].date == kDay);
    CHECK((result.days[0].readings == 500.0).all());
}

TEST_CASE("off-grid pulse matches one-second integration") {
    // 0 W until 13:02, 600 W from 13:02 to 13:07, 0 W afterwards. The meter
    // samples every five minutes except around the pulse.
    std::vector<RawReading> rs;
    for (int k = 0; k <= kSlotsPerDay; ++k) {
        const Timestamp t = Timestamp{sys_days{kDay}} + seconds{k * kSlotSeconds};
        if (t == at(kDay, 13, 5)) continue;
        rs.push_back({"h", t, 0.0});
        if (t == at(kDay, 13, 0)) {
            rs.push_back({"h", at(kDay, 13, 2), 0.0});
            rs.push_back({"h", at(kDay, 13, 7), 600.0});
        }
    }
    const auto result = align_to_grid(rs);
    REQUIRE(result.days.size() == 1);
    const auto oracle = brute_force_cells(rs, kDay);
    for (int k = 0; k < kSlotsPerDay; ++k) {
        CHECK(result.days[0].readings[k] == doctest::Approx(oracle[static_cast<std::size_t>(k)]).epsilon(1e-12));
    }
    const int cell = 13 * 12;
    CHECK(result.days[0].readings[cell] == doctest::Approx(360.0));
    CHECK(result.days[0].readings[cell + 1] == doctest::Approx(240.0));
    // 13:00-13:10 holds exactly 600 W x 5 min.
    CHECK((result.days[0].readings[cell] + result.days[0].readings[cell + 1]) * kSlotSeconds ==
          doctest::Approx(600.0 * 300.0));
}

TEST_CASE("energy over whole cells equals the raw step integral") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> step(20, 900);
    std::uniform_real_distribution<double> watts(0.0, 3000.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<RawReading> rs{{"h", Timestamp{sys_days{kDay}}, 0.0}};
        const Timestamp end = Timestamp{sys_days{kDay} + days{2}};
        while (rs.back().timestamp < end) {
            const Timestamp next = std::min(rs.back().timestamp + seconds{step(rng)}, end);
            rs.push_back({"h", next, watts(rng)});
        }
        const auto result = align_to_grid(rs);
        REQUIRE(result.days.size() == 2);
        for (const auto& d : result.days) {
            double direct = 0.0;  // independent sum over the raw intervals
            const Timestamp lo{sys_days{d.date}};
            const Timestamp hi = lo + days{1};
            for (std::size_t i = 1; i < rs.size(); ++i) {
                const auto a = std::max(rs[i - 1].timestamp, lo);
                const auto b = std::min(rs[i].timestamp, hi);
                if (b > a) direct += rs[i].power * static_cast<double>((b - a).count());
            }
            const double grid = d.readings.sum() * kSlotSeconds;
            CHECK(std::abs(grid - direct) <= 1e-9 * std::max(1.0, direct));
            CHECK(raw_energy(rs, lo, hi) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("alignment is idempotent through to_raw_readings") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> watts(0.0, 2000.0);
    std::vector<DaySeries> series;
    for (int d = 0; d < 3; ++d) {
        DaySeries day;
        day.household_id = "h";
        day.date = Date{sys_days{kDay} + days{d == 2 ? 3 : d}};  // a one-day hole before the last
        for (int k = 0; k < kSlotsPerDay; ++k) day.readings[k] = watts(rng);
        series.push_back(day);
    }
    const auto raw = to_raw_readings(series);
    CHECK(raw.size() == 3 * kSlotsPerDay + 2);  // anchors before each run
    const auto again = align_to_grid(raw);
    REQUIRE(again.days.size() == 3);
    CHECK(again.discarded_days == 0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(again.days[i].date == series[i].date);
        CHECK((again.days[i].readings == series[i].readings).all());
    }
}

TEST_CASE("a gap longer than the limit voids every day it touches") {
    auto rs = aligned_day(kDay, 100.0);
    auto next = aligned_day(Date{sys_days{kDay} + days{1}}, 100.0);
    rs.insert(rs.end(), next.begin() + 1, next.end());
    // Remove 35 minutes straddling midnight: both days lose coverage.
    std::erase_if(rs, [](const RawReading& r) {
        return r.timestamp > at(kDay, 23, 45) && r.timestamp < at(kDay, 23, 45) + minutes{35};
    });
    const auto result = align_to_grid(rs);
    CHECK(result.days.empty());
    CHECK(result.discarded_days == 2);

    AlignOptions lenient;
    lenient.max_gap = minutes{40};
    CHECK(align_to_grid(rs, lenient).days.size() == 2);
}

TEST_CASE("days with partial coverage are discarded, days with none are absent") {
    auto rs = aligned_day(kDay, 100.0);
    const auto later = aligned_day(Date{sys_days{kDay} + days{3}}, 100.0);
    rs.insert(rs.end(), later.begin(), later.end());
    auto partial = aligned_day(Date{sys_days{kDay} + days{5}}, 100.0);
    partial.resize(100);
    rs.insert(rs.end(), partial.begin(), partial.end());
    const auto result = align_to_grid(rs);
    CHECK(result.days.size() == 2);
    CHECK(result.discarded_days == 1);
}

TEST_CASE("unordered timestamps are a data error") {
    std::vector<RawReading> rs{{"h", at(kDay, 0, 5), 1.0}, {"h", at(kDay, 0, 0), 1.0}};
    CHECK_THROWS_AS(align_to_grid(rs), DataError);
}

TEST_CASE("utc offset moves the day boundary") {
    // One local day at UTC+01:00 runs from 23:00 UTC the evening before.
    const Timestamp start = Timestamp{sys_days{kDay}} - hours{1};
    std::vector<RawReading> rs;
    for (int k = 0; k <= kSlotsPerDay; ++k) rs.push_back({"h", start + seconds{k * kSlotSeconds}, k < 12 ? 50.0 : 70.0});
    AlignOptions opts;
    opts.utc_offset = minutes{60};
    const auto local = align_to_grid(rs, opts);
    REQUIRE(local.days.size() == 1);
    CHECK(local.days[0].date == kDay);
    CHECK(local.days[0].readings[10] == 50.0);  // sample k covers local cell k - 1
    CHECK(local.days[0].readings[11] == 70.0);
    CHECK(align_to_grid(rs).days.empty());     // in UTC neither day is complete

    const auto round = to_raw_readings(local.days, opts.utc_offset);
    CHECK(round.front().timestamp == start);
}

TEST_CASE("build_dataset groups households and ignores thread count") {
    std::vector<RawReading> rs;
    for (const char* id : {"b", "a", "c"}) {
        const auto d = aligned_day(kDay, id[0] * 1.0, id);
        rs.insert(rs.end(), d.rbegin(), d.rend());  // unsorted on purpose
    }
    IngestSummary s1, s3;
    const auto one = build_dataset(rs, {}, &s1, 1);
    const auto three = build_dataset(rs, {}, &s3, 3);
    CHECK(s1.households == 3);
    CHECK(s1.days_kept == 3);
    REQUIRE(one.households.size() == 3);
    CHECK(one.households.begin()->first == "a");
    for (const auto& [id, days] : one.households) {
        CHECK((days[0].readings == three.households.at(id)[0].readings).all());
    }
}

TEST_CASE("labels and day filters") {
    Dataset data;
    for (int d = 0; d < 7; ++d) {
        DaySeries day;
        day.household_id = "h";
        day.date = Date{sys_days{kDay} + days{d}};
        data.households["h"].push_back(day);
    }
    std::istringstream cal("# holidays\n2011-03-02\n");
    const auto holidays = read_holidays(cal);
    CHECK(holidays.size() == 1);
    CHECK(filter_days(data, {labels::kWorkingDay}, holidays).total_days() == 4);
    CHECK(filter_days(data, {labels::kWeekend}, holidays).total_days() == 2);
    CHECK(filter_days(data, {labels::kHoliday}, holidays).total_days() == 1);
    CHECK(filter_days(data, {}, holidays).total_days() == 7);

    std::istringstream bad("2011-13-01\n");
    CHECK_THROWS_AS(read_holidays(bad), DataError);
}

TEST_CASE("dataset cache round-trips exactly") {
    Dataset data;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> watts(0.0, 5000.0);
    for (const char* id : {"x", "y"}) {
        DaySeries day;
        day.household_id = id;
        day.date = kDay;
        for (int k = 0; k < kSlotsPerDay; ++k) day.readings[k] = watts(rng);
        data.households[id].push_back(day);
    }
    std::stringstream buf;
    write_dataset(buf, data, R"({"note":1})");
    const auto back = read_dataset(buf);
    REQUIRE(back.households.size() == 2);
    for (const auto& [id, days] : data.households) {
        CHECK(back.households.at(id)[0].date == kDay);
        CHECK((back.households.at(id)[0].readings == days[0].readings).all());
    }
    std::istringstream junk("not json\n");
    CHECK_THROWS_AS(read_dataset(junk), DataError);
}
