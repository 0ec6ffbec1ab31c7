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

#include <Eigen/Core>

#include <cmath>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace motif {

struct DaySeries;

enum class Variant { raw, difference };
enum class Normalization { within_window, within_household };
enum class RangeMode { none, per_house, appliance };

std::string_view to_string(Variant v);
std::string_view to_string(Normalization n);
std::string_view to_string(RangeMode m);
std::optional<Variant> parse_variant(std::string_view s);
std::optional<Normalization> parse_normalization(std::string_view s);
std::optional<RangeMode> parse_range_mode(std::string_view s);

/// Every knob that changes which motifs are found. Defaults are the
/// recommended settings: difference data, compressed, normalized within the
/// motif window, appliance range bands, alphabet 5 with 30-minute motifs.
struct ParameterSet {
    int alphabet_size = 5;
    int motif_len = 6;
    Variant variant = Variant::difference;
    Normalization normalization = Normalization::within_window;
    bool compression = true;
    RangeMode range_mode = RangeMode::appliance;

    /// Throws UsageError. Even alphabets have no middle letter, so "no
    /// change" would be split between two symbols by noise.
    void validate() const;

    /// Stable identifier, e.g. `a5_w6_difference_window_c_appliance`.
    std::string id() const;

    friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// A SAX word. Letter i is `'a' + index`.
struct SymbolWord {
    std::string letters;
    int alphabet_size = 0;

    std::size_t size() const { return letters.size(); }
    int index(std::size_t i) const { return letters[i] - 'a'; }
    int middle() const { return (alphabet_size - 1) / 2; }

    friend bool operator==(const SymbolWord&, const SymbolWord&) = default;
    friend auto operator<=>(const SymbolWord& a, const SymbolWord& b) {
        if (auto c = a.letters <=> b.letters; c != 0) return c;
        return a.alphabet_size <=> b.alphabet_size;
    }
};

enum class ValueScale {
    unit,       ///< values in [0, 1]
    symmetric,  ///< values in [-1, 1], zero meaning "no change"
};

template <typename Scalar>
using SeriesX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// out[i] = window[i+1] - window[i].
template <typename Derived>
SeriesX<typename Derived::Scalar> difference_series(const Eigen::ArrayBase<Derived>& window) {
    const Eigen::Index n = window.size();
    if (n < 2) throw std::invalid_argument("difference_series: window needs at least 2 readings");
    return window.tail(n - 1) - window.head(n - 1);
}

/// unit: (v - min) / (max - min), constant input -> 0.5 everywhere.
/// symmetric: v / max|v|, all-zero input -> 0 everywhere (sign preserved).
template <typename Derived>
SeriesX<typename Derived::Scalar> normalize_values(const Eigen::ArrayBase<Derived>& values, ValueScale scale) {
    using Scalar = typename Derived::Scalar;
    if (values.size() == 0) throw std::invalid_argument("normalize_values: empty input");
    if (scale == ValueScale::unit) {
        const Scalar lo = values.minCoeff();
        const Scalar span = values.maxCoeff() - lo;
        if (span == Scalar(0)) return SeriesX<Scalar>::Constant(values.size(), Scalar(0.5));
        return (values - lo) / span;
    }
    const Scalar peak = values.abs().maxCoeff();
    if (peak == Scalar(0)) return SeriesX<Scalar>::Zero(values.size());
    return values / peak;
}

/// Letter for one normalized value: equal-width bins over [0, 1], a value on
/// an internal boundary goes to the upper bin and 1.0 to the last bin.
template <typename Scalar>
int letter_index(Scalar value, int alphabet_size, ValueScale scale = ValueScale::unit) {
    const Scalar u = scale == ValueScale::symmetric ? (value + Scalar(1)) / Scalar(2) : value;
    if (!(u >= Scalar(0) && u <= Scalar(1))) {
        throw std::domain_error("symbolize: value outside the normalized range");
    }
    const int idx = static_cast<int>(std::floor(u * alphabet_size));
    return idx >= alphabet_size ? alphabet_size - 1 : idx;
}

/// One letter per value, no aggregation.
template <typename Derived>
SymbolWord symbolize(const Eigen::ArrayBase<Derived>& normalized, int alphabet_size,
                     ValueScale scale = ValueScale::unit) {
    if (alphabet_size < 1 || alphabet_size > 26) throw std::invalid_argument("symbolize: alphabet size out of range");
    SymbolWord word{std::string(static_cast<std::size_t>(normalized.size()), 'a'), alphabet_size};
    for (Eigen::Index i = 0; i < normalized.size(); ++i) {
        word.letters[static_cast<std::size_t>(i)] =
            static_cast<char>('a' + letter_index(normalized[i], alphabet_size, scale));
    }
    return word;
}

/// Collapses runs of identical adjacent letters: "abcccb" -> "abcb".
SymbolWord compress(const SymbolWord& word);

/// Household min-max normalization over every reading of every day given.
/// A household with constant readings maps to 0.5.
std::vector<DayReadings> normalize_household(std::span<const DaySeries> days);

/// The pre-compression word for one window under `params`.
///
/// For within_window normalization `window` holds watts; for
/// within_household it holds household-normalized values and no further
/// normalization is applied.
template <typename Derived>
SymbolWord window_word(const Eigen::ArrayBase<Derived>& window, const ParameterSet& params) {
    const bool per_window = params.normalization == Normalization::within_window;
    if (params.variant == Variant::raw) {
        if (per_window) return symbolize(normalize_values(window, ValueScale::unit), params.alphabet_size);
        return symbolize(window, params.alphabet_size);
    }
    const auto diffs = difference_series(window);
    if (per_window) {
        return symbolize(normalize_values(diffs, ValueScale::symmetric), params.alphabet_size, ValueScale::symmetric);
    }
    return symbolize(diffs, params.alphabet_size, ValueScale::symmetric);
}

}  // namespace motif
