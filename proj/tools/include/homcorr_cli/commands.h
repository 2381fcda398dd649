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

#ifndef HOMCORR_CLI_COMMANDS_H
#define HOMCORR_CLI_COMMANDS_H

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>

#include "homcorr/verification.h"
#include "homcorr_cli/config.h"

namespace homcorr::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitConfigError = 2,
    kExitRuntimeError = 3,
};

/// Writes c_in.csv, c_out.csv and visibility.csv (as selected by temporal) plus meta.json.
int cmd_map(const ExperimentConfig &cfg, std::ostream &out);

/// Fock oracle against the engine on every documented case at cfg.grid_n sectors,
/// plus the configured mode pair when it has no radial envelope.
int cmd_verify(const ExperimentConfig &cfg, std::ostream &out, const EngineFn &engine = default_engine());

/// Writes events_in.csv, events_out.csv and simulation.json.
int cmd_simulate(const ExperimentConfig &cfg, std::ostream &out);

struct AnalyzeInputs {
    std::filesystem::path events_in;
    /// Out-configuration events; ignored when `reference` is set.
    std::optional<std::filesystem::path> events_out;
    /// Out-configuration count matrix (a c_out.csv written by an earlier analyze).
    std::optional<std::filesystem::path> reference;
};

/// Writes the measured map into <output_dir>/measured.
int cmd_analyze(const ExperimentConfig &cfg, const AnalyzeInputs &inputs, std::ostream &out);

/// Runs `body`, mapping ConfigError to 2, FormatError and other failures to 3.
/// Messages go to `err`.
int guarded(std::ostream &err, const std::function<int()> &body);

/// Full command line: parses flags, loads the config and dispatches.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace homcorr::cli

#endif
