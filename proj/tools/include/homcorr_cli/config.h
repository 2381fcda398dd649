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

#ifndef HOMCORR_CLI_CONFIG_H
#define HOMCORR_CLI_CONFIG_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "homcorr/correlation.h"
#include "homcorr/events.h"
#include "homcorr/modes.h"

namespace homcorr::cli {

/// A photon's mode: either a closed-form named mode or an element pipeline.
struct ModeSpec {
    std::optional<NamedMode> named;
    int l = 1;
    std::optional<Preparation> pipeline;

    ModeField build(const std::optional<RadialProfile> &envelope) const;
    nlohmann::json to_json() const;
};

enum class TemporalSelection { In, Out, Both };

struct RadialConfig {
    RadialProfile profile;
    int nodes = 64;
};

struct ExperimentConfig {
    ModeSpec mode_a{NamedMode::RadialVV, 1, std::nullopt};
    ModeSpec mode_b{NamedMode::PiVV, 1, std::nullopt};
    ProjectionPair projection;
    int grid_n = 28;
    TemporalSelection temporal = TemporalSelection::Both;
    RadialConfig radial;
    bool render_pgm = false;
    SimConfig sim;
    AnalysisConfig analysis;
    std::filesystem::path output_dir = "homcorr_out";

    /// Envelope attached to both modes; none for the unit profile.
    std::optional<RadialProfile> envelope() const;
    MapOptions map_options() const;
    /// Analysis settings with the sector geometry filled in from the sensor layout.
    AnalysisConfig analysis_for_sim() const;
};

/// Parses JSON with // and /* */ comments. Every object level rejects keys it
/// does not know. Throws ConfigError with the offending path on any problem.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Annotated default configuration; parse_config(default_config_text()) yields ExperimentConfig{}.
std::string default_config_text();

/// Configuration echo recorded in meta.json sidecars.
nlohmann::json config_summary(const ExperimentConfig &cfg);

}  // namespace homcorr::cli

#endif
