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

#include <Eigen/Core>

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace motif {

inline constexpr const char* kToolName = "motif";
inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr int kSlotsPerDay = 288;
inline constexpr int kSlotSeconds = 300;
inline constexpr int kSecondsPerDay = kSlotsPerDay * kSlotSeconds;

using Date = std::chrono::year_month_day;
using Timestamp = std::chrono::sys_seconds;

/// One household-day of mean power per 5-minute slot, in watts.
using DayReadings = Eigen::Array<double, kSlotsPerDay, 1>;

/// Bad input data: malformed files, physically implausible readings.
/// Maps to exit code 1 at the command line.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad invocation or parameter combination. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_date(Date d);
std::optional<Date> parse_date(std::string_view text);

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view text);

inline bool is_weekend(Date d) {
    const std::chrono::weekday wd{std::chrono::sys_days{d}};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

}  // namespace motif
