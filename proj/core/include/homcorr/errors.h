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

#ifndef HOMCORR_ERRORS_H
#define HOMCORR_ERRORS_H

#include <stdexcept>
#include <string>

namespace homcorr {

/// Invalid user-facing configuration: unknown names, bad parameters, guard violations.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Malformed external input (event streams, matrix CSVs).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace homcorr

#endif
