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

#include "motif/cli.hpp"
#include "motif/config.hpp"
#include "motif/evaluate.hpp"
#include "motif/ingest.hpp"
#include "motif/mine.hpp"
#include "motif/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace motif {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    return out;
}

template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
    auto out = open_output(path);
    try {
        fn(out);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
    out.close();
    if (!out) throw DataError("failed writing " + path);
}

/// Flags shared by every command that reads a config file.
struct CommonFlags {
    std::string config_path;
    int threads = 1;
    CLI::Option* threads_opt = nullptr;

    void add(CLI::App& cmd) {
        cmd.add_option("--config", config_path, "Key-value config file; flags given on the command line win");
        threads_opt = cmd.add_option("--threads", threads, "Worker threads; output does not depend on it (default 1)")
                          ->check(CLI::PositiveNumber);
    }

    RunConfig load() const {
        RunConfig cfg;
        if (!config_path.empty()) {
            auto in = open_input(config_path);
            cfg.apply(KeyValueConfig::parse(in));
        }
        if (threads_opt->count()) cfg.threads = threads;
        return cfg;
    }
};

/// Mining parameter flags, overlaid on a RunConfig.
struct MineFlags {
    RunConfig defaults;
    int alphabet = defaults.params.alphabet_size;
    int motif_len = defaults.params.motif_len;
    std::string variant{to_string(defaults.params.variant)};
    std::string normalization{to_string(defaults.params.normalization)};
    bool compress = defaults.params.compression;
    std::string range_mode{to_string(defaults.params.range_mode)};
    double min_range = defaults.filters.min_range;
    int middle_prefix = defaults.filters.middle_prefix_len;
    std::vector<CLI::Option*> opts;

    void add(CLI::App& cmd) {
        opts = {
            cmd.add_option("--alphabet", alphabet, "Alphabet size, must be odd (default 5; 5 with 30-minute or 7 with 20-minute motifs recommended)"),
            cmd.add_option("--motif-len", motif_len, "Motif length in 5-minute readings (default 6 = 30 minutes)"),
            cmd.add_option("--variant", variant, "raw | difference (default difference)"),
            cmd.add_option("--normalization", normalization, "within_window | within_household (default within_window)"),
            cmd.add_option("--compress", compress, "Collapse repeated adjacent letters: true | false (default true)"),
            cmd.add_option("--range-mode", range_mode,
                           "none | per_house | appliance (default appliance: bands 300, 1000, 3000, 5000, 60000 W)"),
            cmd.add_option("--min-range", min_range, "Minimum window range in watts (default 100)"),
            cmd.add_option("--middle-prefix", middle_prefix,
                           "Reject words starting with this many middle letters (default 2)"),
        };
    }

    void overlay(RunConfig& cfg) const {
        if (opts[0]->count()) cfg.params.alphabet_size = alphabet;
        if (opts[1]->count()) cfg.params.motif_len = motif_len;
        if (opts[2]->count()) {
            auto v = parse_variant(variant);
            if (!v) throw UsageError("--variant must be raw or difference");
            cfg.params.variant = *v;
        }
        if (opts[3]->count()) {
            auto n = parse_normalization(normalization);
            if (!n) throw UsageError("--normalization must be within_window or within_household");
            cfg.params.normalization = *n;
        }
        if (opts[4]->count()) cfg.params.compression = compress;
        if (opts[5]->count()) {
            auto m = parse_range_mode(range_mode);
            if (!m) throw UsageError("--range-mode must be none, per_house or appliance");
            cfg.params.range_mode = *m;
        }
        if (opts[6]->count()) cfg.filters.min_range = min_range;
        if (opts[7]->count()) cfg.filters.middle_prefix_len = middle_prefix;
        cfg.params.validate();
        cfg.filters.validate();
        cfg.bands.validate();
    }
};

Dataset load_cache(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_dataset(in);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Motif mining and parameter evaluation for 5-minute electricity meter data", "motif"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // ingest ---------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "Align raw readings to the 5-minute grid and write a dataset cache");
    CommonFlags ingest_common;
    std::string ingest_input, ingest_out, ingest_holidays, ingest_labels, ingest_delim;
    bool ingest_header = false;
    int max_gap = 30, utc_offset = 0;
    ingest->add_option("--input", ingest_input, "Delimited readings: household_id,timestamp,watts")->required();
    ingest->add_option("--out", ingest_out, "Dataset cache to write (JSONL)")->required();
    auto* holidays_opt = ingest->add_option("--holidays", ingest_holidays, "Holiday calendar: one ISO date per line");
    auto* labels_opt = ingest->add_option("--labels", ingest_labels,
                                          "Keep days carrying all these tags, comma separated; 'any' keeps every "
                                          "day (default working-day: weekdays that are not holidays)");
    auto* delim_opt = ingest->add_option("--delimiter", ingest_delim, "Field delimiter (default ,)");
    auto* header_opt = ingest->add_flag("--header", ingest_header, "Input has a header row (default off)");
    auto* gap_opt = ingest->add_option("--max-gap-minutes", max_gap,
                                       "A gap between readings longer than this voids the day (default 30)");
    auto* offset_opt = ingest->add_option("--utc-offset-minutes", utc_offset,
                                          "Local time offset from UTC for day boundaries (default 0)");
    ingest_common.add(*ingest);

    // mine -----------------------------------------------------------------
    auto* mine = app.add_subcommand("mine", "Mine motifs from a dataset cache into a catalog");
    CommonFlags mine_common;
    MineFlags mine_flags;
    std::string mine_cache, mine_out;
    mine->add_option("--cache", mine_cache, "Dataset cache from 'ingest'")->required();
    mine->add_option("--out", mine_out, "Catalog to write (JSONL)")->required();
    mine_flags.add(*mine);
    mine_common.add(*mine);

    // sweep ----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "Mine and score a grid of parameter sets");
    CommonFlags sweep_common;
    std::string sweep_cache, sweep_dir = ".", sweep_grid = "standard", sweep_measures;
    MineFlags sweep_flags;
    sweep->add_option("--cache", sweep_cache, "Dataset cache from 'ingest'")->required();
    sweep->add_option("--out-dir", sweep_dir,
                      "Directory for summary.csv, plot.csv, coverage.csv and timing.csv (default .)");
    sweep->add_option("--grid", sweep_grid,
                      "standard: alphabets 5,7,9 x lengths 4,6,9,12 x raw/difference x window/household "
                      "normalization x compressed x none/per_house/appliance (144 points); config: sweep.* keys; "
                      "single: the mining flags only (default standard)")
        ->check(CLI::IsMember({"standard", "config", "single"}));
    sweep->add_option("--measures", sweep_measures,
                      "Comma-separated subset of per_day,unique_days,pct_days (default all three; regions "
                      "per_day 2/0.3/3, unique_days 65/10/3, pct_days 90/20/3)");
    sweep_flags.add(*sweep);
    sweep_common.add(*sweep);

    // synth ----------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "Generate synthetic readings with a ground-truth activity log");
    std::string fixture = "desk", synth_out = "synth_readings.csv", synth_truth = "synth_truth.jsonl";
    std::uint64_t synth_seed = 7;
    int synth_households = 20, synth_days = kDeskFixtureDays, synth_threads = 1;
    double synth_noise_correlation = 0.0;
    synth->add_option("--fixture", fixture, "Fixture name (default desk)")->check(CLI::IsMember({"desk"}));
    synth->add_option("--seed", synth_seed, "Random seed (default 7)");
    synth->add_option("--households", synth_households, "Household count (default 20)")->check(CLI::PositiveNumber);
    synth->add_option("--days", synth_days, "Working days per household (default 65)")->check(CLI::PositiveNumber);
    synth->add_option("--noise-correlation", synth_noise_correlation,
                      "Lag-1 autocorrelation of the background noise, in [0, 1) (default 0: independent noise)");
    synth->add_option("--out", synth_out, "Readings CSV to write (default synth_readings.csv)");
    synth->add_option("--truth", synth_truth, "Truth log to write (default synth_truth.jsonl)");
    synth->add_option("--threads", synth_threads, "Worker threads (default 1)")->check(CLI::PositiveNumber);

    // score ----------------------------------------------------------------
    auto* score = app.add_subcommand("score", "Compare a catalog's top motifs with a ground-truth log");
    std::string score_catalog_path, score_truth, score_out;
    int slack = 2;
    std::size_t top = 3;
    score->add_option("--catalog", score_catalog_path, "Catalog from 'mine'")->required();
    score->add_option("--truth", score_truth, "Truth log from 'synth'")->required();
    score->add_option("--slack", slack, "Allowed start-slot difference (default 2)")->check(CLI::NonNegativeNumber);
    score->add_option("--top", top, "Top motifs per household considered (default 3)")->check(CLI::PositiveNumber);
    score->add_option("--out", score_out, "Write the recall table here instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsageError;
    }

    try {
        if (*ingest) {
            RunConfig cfg = ingest_common.load();
            if (holidays_opt->count()) cfg.holidays_path = ingest_holidays;
            if (labels_opt->count()) {
                KeyValueConfig kv;
                kv.set("ingest.labels", ingest_labels);
                cfg.apply(kv);
            }
            if (delim_opt->count()) {
                if (ingest_delim.size() != 1) throw UsageError("--delimiter must be a single character");
                cfg.csv.delimiter = ingest_delim[0];
            }
            if (header_opt->count()) cfg.csv.has_header = ingest_header;
            if (gap_opt->count()) cfg.align.max_gap = std::chrono::minutes{max_gap};
            if (offset_opt->count()) cfg.align.utc_offset = std::chrono::minutes{utc_offset};

            auto in = open_input(ingest_input);
            HolidayCalendar holidays;
            if (!cfg.holidays_path.empty()) {
                auto hin = open_input(cfg.holidays_path);
                holidays = read_holidays(hin);
            }
            const ParseResult parsed = parse_readings(in, cfg.csv);
            for (std::size_t i = 0; i < parsed.errors.size() && i < 20; ++i) {
                err << ingest_input << ':' << parsed.errors[i].line << ": " << parsed.errors[i].message << '\n';
            }
            if (parsed.errors.size() > 20) err << "... " << parsed.errors.size() - 20 << " more row errors\n";

            IngestSummary summary;
            Dataset data = build_dataset(parsed.readings, cfg.align, &summary, cfg.threads);
            const std::size_t before = data.total_days();
            if (cfg.labels.empty()) {
                label_days(data, holidays);
            } else {
                data = filter_days(data, cfg.labels, holidays);
            }
            write_file(ingest_out, [&](std::ostream& o) { write_dataset(o, data, cfg.to_json()); });

            out << "households: " << data.households.size() << '\n'
                << "days kept: " << data.total_days() << '\n'
                << "days discarded (incomplete): " << summary.days_discarded << '\n'
                << "days filtered out (labels): " << before - data.total_days() << '\n'
                << "rows: " << parsed.rows << '\n'
                << "rows rejected: " << parsed.errors.size() << '\n';
            return kExitOk;
        }

        if (*mine) {
            RunConfig cfg = mine_common.load();
            mine_flags.overlay(cfg);
            const Dataset data = load_cache(mine_cache);
            const MotifCatalog catalog = mine_dataset(data, cfg.params, cfg.filters, cfg.bands, cfg.threads);
            write_file(mine_out, [&](std::ostream& o) { write_catalog(o, catalog); });
            out << "parameter set: " << cfg.params.id() << '\n'
                << "households: " << catalog.day_counts.size() << '\n'
                << "motifs: " << catalog.motif_count() << '\n'
                << "occurrences: " << catalog.occurrence_count() << '\n';
            return kExitOk;
        }

        if (*sweep) {
            RunConfig cfg = sweep_common.load();
            sweep_flags.overlay(cfg);
            SweepOptions options;
            options.filters = cfg.filters;
            options.bands = cfg.bands;
            options.extend_to = cfg.extend_to;
            options.threads = cfg.threads;
            if (!sweep_measures.empty()) {
                std::vector<RegionConfig> regions;
                std::vector<double> weights;
                std::string list = sweep_measures;
                std::size_t start = 0;
                while (start <= list.size()) {
                    auto pos = std::min(list.find(',', start), list.size());
                    const auto name = list.substr(start, pos - start);
                    auto m = parse_measure(name);
                    if (!m) throw UsageError("unknown measure '" + name + "'");
                    for (std::size_t i = 0; i < cfg.regions.size(); ++i) {
                        if (cfg.regions[i].measure == *m) {
                            regions.push_back(cfg.regions[i]);
                            weights.push_back(i < cfg.weights.size() ? cfg.weights[i] : 1.0);
                        }
                    }
                    start = pos + 1;
                }
                cfg.regions = regions;
                cfg.weights = weights;
            }
            options.regions = cfg.regions;
            options.weights = cfg.weights;

            std::vector<ParameterSet> grid;
            if (sweep_grid == "standard") grid = standard_grid();
            else if (sweep_grid == "config") grid = cfg.grid.expand();
            else grid = {cfg.params};
            for (const auto& p : grid) p.validate();

            const Dataset data = load_cache(sweep_cache);
            const SweepReport report = run_sweep(data, grid, options);

            nlohmann::json j = nlohmann::json::parse(cfg.to_json());
            j["grid"] = sweep_grid;
            j["grid_points"] = grid.size();
            const std::string config_json = j.dump();
            fs::create_directories(sweep_dir);
            const fs::path dir(sweep_dir);
            write_file((dir / "summary.csv").string(), [&](std::ostream& o) { emit_summary(report, o, config_json); });
            write_file((dir / "plot.csv").string(), [&](std::ostream& o) { emit_plot_data(report, o, config_json); });
            write_file((dir / "coverage.csv").string(), [&](std::ostream& o) { emit_coverage(report, o, config_json); });
            write_file((dir / "timing.csv").string(), [&](std::ostream& o) { emit_timing(report, o); });

            std::size_t failed = 0;
            for (const auto& e : report.entries) {
                if (e.error) {
                    ++failed;
                    err << "grid point " << e.params.id() << " failed: " << *e.error << '\n';
                }
            }
            if (failed == report.entries.size()) return kExitDataError;
            const auto& best = report.entries[report.ranking.front()];
            out << "grid points: " << report.entries.size() << " (" << failed << " failed)\n"
                << "best: " << best.params.id() << " mean region score " << format_double(best.mean_score) << '\n';
            return kExitOk;
        }

        if (*synth) {
            auto profiles = desk_fixture(synth_seed, synth_households);
            for (auto& p : profiles) p.noise_correlation = synth_noise_correlation;
            const SynthResult result = generate(profiles, synth_days, synth_seed, kDefaultStartDate, synth_threads);
            const std::string config_json =
                nlohmann::json{{"fixture", fixture}, {"seed", synth_seed}, {"households", synth_households},
                               {"days", synth_days}, {"noise_correlation", synth_noise_correlation},
                               {"start", format_date(kDefaultStartDate)}}
                    .dump();
            write_file(synth_out, [&](std::ostream& o) { write_readings_csv(o, result.data, config_json); });
            write_file(synth_truth, [&](std::ostream& o) { write_truth(o, result.truth, config_json); });
            out << "households: " << result.data.households.size() << '\n'
                << "days: " << result.data.total_days() << '\n'
                << "planted activities: " << result.truth.entries.size() << '\n';
            return kExitOk;
        }

        if (*score) {
            auto cin = open_input(score_catalog_path);
            auto tin = open_input(score_truth);
            const MotifCatalog catalog = read_catalog(cin);
            const GroundTruthLog truth = read_truth(tin);
            const RecoveryReport report = recovery_report(catalog, truth, slack, top);
            if (score_out.empty()) {
                write_recovery_report(out, report);
            } else {
                write_file(score_out, [&](std::ostream& o) { write_recovery_report(o, report); });
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsageError;
}

}  // namespace motif
