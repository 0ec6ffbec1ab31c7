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

#include <istream>
#include <ostream>
#include <sstream>

namespace motif {

namespace {

void header_line(std::ostream& out, std::string_view kind, const std::string& config_json) {
    out << "# " << kToolName << ' ' << kToolVersion << ' ' << kind << " config=" << config_json << '\n';
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

}  // namespace

void emit_plot_data(const SweepReport& report, std::ostream& out, const std::string& config_json) {
    header_line(out, "plot-data", config_json);
    out << "# region: measure,x,y,z\n";
    for (const auto& r : report.regions) {
        out << to_string(r.measure) << ',' << format_double(r.x) << ',' << format_double(r.y) << ',' << r.z << '\n';
    }
    out << "# data: param_set_id,measure,rank,mean_value,in_region\n";
    for (const auto& entry : report.entries) {
        if (entry.error) continue;
        for (std::size_t i = 0; i < entry.curves.size(); ++i) {
            const auto& curve = entry.curves[i];
            const auto& region = report.regions[i];
            for (std::size_t r = 0; r < curve.values.size(); ++r) {
                const auto& v = curve.values[r];
                const bool inside = v && static_cast<int>(r) < region.z && region.contains(*v);
                out << entry.params.id() << ',' << to_string(curve.measure) << ',' << r + 1 << ','
                    << (v ? format_double(*v) : "NA") << ',' << (inside ? 1 : 0) << '\n';
            }
        }
    }
    if (!out) throw DataError("failed writing plot data");
}

void emit_summary(const SweepReport& report, std::ostream& out, const std::string& config_json) {
    header_line(out, "summary", config_json);
    out << "param_set_id,mean_region_score";
    for (const auto& r : report.regions) out << ',' << to_string(r.measure);
    out << ",status\n";
    for (std::size_t idx : report.ranking) {
        const auto& entry = report.entries[idx];
        out << entry.params.id() << ',';
        if (entry.error) {
            out << "NA";
            for (std::size_t i = 0; i < report.regions.size(); ++i) out << ",NA";
            std::string msg = *entry.error;
            for (char& c : msg) {
                if (c == ',' || c == '\n') c = ' ';
            }
            out << ",error: " << msg << '\n';
            continue;
        }
        out << format_double(entry.mean_score);
        for (double s : entry.scores) out << ',' << format_double(s);
        out << ",ok\n";
    }
    if (!out) throw DataError("failed writing summary");
}

void emit_coverage(const SweepReport& report, std::ostream& out, const std::string& config_json) {
    header_line(out, "coverage", config_json);
    out << "param_set_id,measure,rank,households\n";
    for (const auto& entry : report.entries) {
        if (entry.error) continue;
        for (const auto& curve : entry.curves) {
            for (std::size_t r = 0; r < curve.households.size(); ++r) {
                out << entry.params.id() << ',' << to_string(curve.measure) << ',' << r + 1 << ','
                    << curve.households[r] << '\n';
            }
        }
    }
    if (!out) throw DataError("failed writing coverage");
}

void emit_timing(const SweepReport& report, std::ostream& out) {
    out << "param_set_id,wall_seconds\n";
    for (const auto& entry : report.entries) out << entry.params.id() << ',' << entry.wall_seconds << '\n';
}

PlotData parse_plot_data(std::istream& in) {
    PlotData data;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line, ',');
        auto fail = [&](const char* what) {
            return DataError("plot data line " + std::to_string(line_no) + ": " + what);
        };
        if (fields.size() == 4) {
            RegionConfig r;
            auto m = parse_measure(fields[0]);
            auto x = parse_double(fields[1]);
            auto y = parse_double(fields[2]);
            auto z = parse_double(fields[3]);
            if (!m || !x || !y || !z) throw fail("bad region row");
            data.regions.push_back({*m, *x, *y, static_cast<int>(*z)});
        } else if (fields.size() == 5) {
            PlotRow row;
            row.param_set_id = std::string(fields[0]);
            auto m = parse_measure(fields[1]);
            auto rank = parse_double(fields[2]);
            if (!m || !rank) throw fail("bad data row");
            row.measure = *m;
            row.rank = static_cast<int>(*rank);
            if (fields[3] != "NA") {
                row.mean_value = parse_double(fields[3]);
                if (!row.mean_value) throw fail("bad mean value");
            }
            row.in_region = fields[4] == "1";
            data.rows.push_back(std::move(row));
        } else {
            throw fail("unexpected field count");
        }
    }
    return data;
}

}  // namespace motif
