// Copyright 2026 The homcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homcorr_cli/commands.h"

#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "homcorr/errors.h"
#include "homcorr/events.h"
#include "homcorr/fock_oracle.h"
#include "homcorr/map_io.h"
#include "homcorr/version.h"

namespace homcorr::cli {

namespace {

// The out run draws from its own stream so the two exposures are independent.
constexpr std::uint64_t kOutSeedSalt = 0x6F75740000000001ull;

void require_finite(const Grid2D<double> &m, const char *what) {
    for (double v : m.data()) {
        if (!std::isfinite(v)) {
            throw std::runtime_error(std::string("numerical failure: non-finite value in ") + what);
        }
    }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

void write_events(const std::filesystem::path &path, const std::vector<PhotonEvent> &events) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_events_csv(f, events);
    if (!f) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::vector<PhotonEvent> read_events(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw FormatError("cannot open event file " + path.string());
    }
    try {
        return read_events_csv(f);
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

Grid2D<double> load_reference(const std::filesystem::path &path, const AngularGrid &grid) {
    MatrixCsv m = read_matrix_csv(path);
    const auto n = static_cast<std::size_t>(grid.size());
    if (m.phi_c.size() != n || m.phi_d.size() != n) {
        throw ConfigError("reference " + path.string() + " is " + std::to_string(m.phi_c.size()) + "x" +
                          std::to_string(m.phi_d.size()) + " but the grid has " + std::to_string(n) + " sectors");
    }
    auto centers = grid.centers();
    for (std::size_t k = 0; k < n; k++) {
        if (std::abs(m.phi_c[k] - centers[k]) > 1e-12 || std::abs(m.phi_d[k] - centers[k]) > 1e-12) {
            throw ConfigError("reference " + path.string() + " uses different sector centers than the grid");
        }
    }
    return m.dense();
}

}  // namespace

int cmd_map(const ExperimentConfig &cfg, std::ostream &out) {
    AngularGrid grid(cfg.grid_n);
    auto env = cfg.envelope();
    ModeField a = cfg.mode_a.build(env);
    ModeField b = cfg.mode_b.build(env);
    CorrelationMap map = correlation_map(a, b, grid, grid, cfg.projection, cfg.map_options());
    require_finite(map.c_in, "c_in");
    require_finite(map.c_out, "c_out");

    MapContents contents;
    contents.c_in = cfg.temporal != TemporalSelection::Out;
    contents.c_out = cfg.temporal != TemporalSelection::In;
    contents.visibility = cfg.temporal == TemporalSelection::Both;
    nlohmann::json meta = config_summary(cfg);
    meta["command"] = "map";
    write_map_files(cfg.output_dir, map, meta, contents);
    if (cfg.render_pgm && contents.visibility) {
        std::ofstream img(cfg.output_dir / "visibility.pgm", std::ios::binary);
        write_visibility_pgm(img, map.visibility);
        std::ofstream mask(cfg.output_dir / "visibility_mask.pgm", std::ios::binary);
        write_mask_pgm(mask, map.visibility);
        if (!img || !mask) {
            throw std::runtime_error("failed writing graymaps in " + cfg.output_dir.string());
        }
    }
    out << "map " << cfg.grid_n << "x" << cfg.grid_n << " written to " << cfg.output_dir.string();
    if (contents.visibility) {
        out << " (" << map.defined_cells() << " defined visibility cells)";
    }
    out << "\n";
    return kExitOk;
}

int cmd_verify(const ExperimentConfig &cfg, std::ostream &out, const EngineFn &engine) {
    const int n = cfg.grid_n;
    if (n > kMaxOracleSectors) {
        throw ConfigError("verify needs grid_n <= " + std::to_string(kMaxOracleSectors) +
                          " (the oracle state space grows as n^2), got " + std::to_string(n));
    }
    const int sizes[] = {n};
    VerificationReport report = verify_engine(sizes, engine);
    out << format_report(report);
    bool ok = report.passed();
    if (!cfg.envelope()) {
        AngularGrid grid(n);
        CaseSetup setup{cfg.mode_a.build(std::nullopt), cfg.mode_b.build(std::nullopt), cfg.projection};
        CorrelationMap oracle = oracle_correlation_map(setup.mode_a, setup.mode_b, grid, setup.projection);
        MapDeviation d = compare_maps(oracle, engine(setup, grid));
        bool pass = d.worst() <= report.tolerance;
        out << (pass ? "PASS" : "FAIL") << " configured pair " << setup.mode_a.label() << " / "
            << setup.mode_b.label() << " n=" << n << " worst deviation " << d.worst() << "\n";
        ok = ok && pass;
    } else {
        out << "configured pair skipped: the oracle samples fields at one radius and has no envelope\n";
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_simulate(const ExperimentConfig &cfg, std::ostream &out) {
    AngularGrid grid(cfg.grid_n);
    // The generator supplies the ring envelope itself, so the map is the bare angular one.
    CorrelationMap map = correlation_map(cfg.mode_a.build(std::nullopt), cfg.mode_b.build(std::nullopt), grid, grid,
                                         cfg.projection);
    SimConfig sim_in = cfg.sim;
    SimConfig sim_out = cfg.sim;
    sim_out.seed = cfg.sim.seed ^ kOutSeedSalt;
    SimulatedRun run_in = generate_events(map, Temporal::In, sim_in);
    SimulatedRun run_out = generate_events(map, Temporal::Out, sim_out);

    std::filesystem::create_directories(cfg.output_dir);
    write_events(cfg.output_dir / "events_in.csv", run_in.events);
    write_events(cfg.output_dir / "events_out.csv", run_out.events);
    nlohmann::json meta = config_summary(cfg);
    meta["command"] = "simulate";
    meta["grid"] = {{"sectors", cfg.grid_n}};
    meta["version"] = std::string(kVersion);
    meta["runs"] = {
        {"in", {{"seed", sim_in.seed}, {"pairs", sim_in.pairs}, {"split_pairs", run_in.split_pairs},
                {"photons", run_in.photons}, {"pixel_events", run_in.events.size()}}},
        {"out", {{"seed", sim_out.seed}, {"pairs", sim_out.pairs}, {"split_pairs", run_out.split_pairs},
                 {"photons", run_out.photons}, {"pixel_events", run_out.events.size()}}},
    };
    write_text(cfg.output_dir / "simulation.json", meta.dump(2) + "\n");
    out << "simulated " << cfg.sim.pairs << " pairs per run: " << run_in.events.size() << " in and "
        << run_out.events.size() << " out pixel events written to " << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_analyze(const ExperimentConfig &cfg, const AnalyzeInputs &inputs, std::ostream &out) {
    AngularGrid grid(cfg.grid_n);
    AnalysisConfig acfg = cfg.analysis_for_sim();
    // Check the reference before the expensive clustering pass.
    std::optional<Grid2D<double>> reference;
    if (inputs.reference) {
        reference = load_reference(*inputs.reference, grid);
    }
    AnalyzedRun in = analyze_events(read_events(inputs.events_in), grid, acfg);
    CoincidenceHistogram ref_hist{grid, grid, {}, 0};
    std::size_t out_coincidences = 0;
    if (reference) {
        ref_hist.counts = *reference;
    } else {
        if (!inputs.events_out) {
            throw ConfigError("analyze needs out-configuration events or a reference matrix");
        }
        AnalyzedRun o = analyze_events(read_events(*inputs.events_out), grid, acfg);
        out_coincidences = o.coincidences.size();
        ref_hist = o.histogram;
    }
    CorrelationMap measured = bin_and_normalize(in.histogram, ref_hist, acfg.min_out_count);

    nlohmann::json meta = config_summary(cfg);
    meta["command"] = "analyze";
    meta["kind"] = "measured counts";
    meta["inputs"] = {{"events_in", inputs.events_in.string()}};
    if (inputs.reference) {
        meta["inputs"]["reference"] = inputs.reference->string();
    } else {
        meta["inputs"]["events_out"] = inputs.events_out->string();
        meta["out_coincidences"] = out_coincidences;
    }
    meta["in_hits"] = in.hits.size();
    meta["in_coincidences"] = in.coincidences.size();
    meta["in_rejected"] = in.histogram.rejected;
    meta["min_out_count"] = acfg.min_out_count;
    auto dir = cfg.output_dir / "measured";
    write_map_files(dir, measured, meta);
    out << "analyzed " << in.hits.size() << " hits, " << in.coincidences.size() << " in coincidences; "
        << measured.defined_cells() << " defined cells written to " << dir.string() << "\n";
    return kExitOk;
}

int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const FormatError &e) {
        err << "input error: " << e.what() << "\n";
        return kExitRuntimeError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hong-Ou-Mandel correlation maps for structured photon modes", "homcorr"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    bool quiet = false;
    app.add_option("--config", config_path, "Experiment configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
    app.add_option("--seed", seed, "Simulation seed (overrides sim.seed)");
    app.add_option("--grid", grid, "Sectors per port (overrides grid_n)")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "Only report errors");

    auto *map = app.add_subcommand("map", "Compute C_in, C_out and visibility maps");
    auto *verify = app.add_subcommand("verify", "Check the engine against the Fock-space oracle");
    auto *simulate = app.add_subcommand("simulate", "Generate in and out event streams");
    auto *analyze = app.add_subcommand("analyze", "Turn event streams into a measured map");
    auto *defaults = app.add_subcommand("print-default-config", "Print the annotated default configuration");

    std::string events_in;
    std::string events_out;
    std::string reference;
    analyze->add_option("--events-in", events_in, "In-configuration events (default <out>/events_in.csv)");
    analyze->add_option("--events-out", events_out, "Out-configuration events (default <out>/events_out.csv)");
    analyze->add_option("--reference", reference, "Out-configuration count matrix CSV used instead of events");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitConfigError;
    }

    if (*defaults) {
        out << default_config_text();
        return kExitOk;
    }

    std::ofstream null_stream;
    std::ostream &report = quiet ? static_cast<std::ostream &>(null_stream) : out;
    return guarded(err, [&]() -> int {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        }
        if (seed) {
            cfg.sim.seed = *seed;
        }
        if (grid) {
            if (*grid < 2) {
                throw ConfigError("--grid must be at least 2");
            }
            cfg.grid_n = *grid;
        }
        if (*map) {
            return cmd_map(cfg, report);
        }
        if (*verify) {
            return cmd_verify(cfg, report);
        }
        if (*simulate) {
            return cmd_simulate(cfg, report);
        }
        AnalyzeInputs inputs;
        inputs.events_in = events_in.empty() ? cfg.output_dir / "events_in.csv" : std::filesystem::path(events_in);
        if (!reference.empty()) {
            inputs.reference = reference;
        } else {
            inputs.events_out =
                events_out.empty() ? cfg.output_dir / "events_out.csv" : std::filesystem::path(events_out);
        }
        return cmd_analyze(cfg, inputs, report);
    });
}

}  // namespace homcorr::cli
