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

#ifndef HOMCORR_MAP_IO_H
#define HOMCORR_MAP_IO_H

// CorrelationMap serialization.
//
// Each matrix is a CSV: the header row is "phi_c/phi_d" followed by the port-D
// sector centers in radians, and every data row starts with its port-C sector
// center. Numbers use the shortest decimal form that round-trips a double;
// undefined cells are the token "nan". A JSON sidecar records how the map was
// produced.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "homcorr/correlation.h"
#include "homcorr/grid.h"

namespace homcorr {

/// Shortest round-trip decimal representation ("nan" for NaN).
std::string format_double(double v);
/// Strict parse of a whole field; accepts "nan".
std::optional<double> parse_double(std::string_view s);

void write_matrix_csv(std::ostream &out, const AngularGrid &grid_c, const AngularGrid &grid_d,
                      const Grid2D<double> &values);
void write_matrix_csv(std::ostream &out, const AngularGrid &grid_c, const AngularGrid &grid_d,
                      const Grid2D<std::optional<double>> &values);

struct MatrixCsv {
    std::vector<double> phi_c;
    std::vector<double> phi_d;
    Grid2D<std::optional<double>> values;

    /// Values as plain doubles; throws FormatError if any cell is "nan".
    Grid2D<double> dense() const;
};

/// Throws FormatError with a line number on malformed input.
MatrixCsv read_matrix_csv(std::istream &in);
MatrixCsv read_matrix_csv(const std::filesystem::path &path);

/// Which matrices a map file set contains.
struct MapContents {
    bool c_in = true;
    bool c_out = true;
    bool visibility = true;
};

/// Writes c_in.csv / c_out.csv / visibility.csv (as selected) and meta.json into `dir`.
/// The sidecar is `metadata` with grid, eps_zero and version fields added.
void write_map_files(const std::filesystem::path &dir, const CorrelationMap &map, nlohmann::json metadata,
                     MapContents contents = {});

nlohmann::json jones_to_json(const JonesVector &v);
nlohmann::json projection_to_json(const ProjectionPair &p);

/// Binary PGM (P5) of a visibility matrix: [-1, 1] -> [0, 255], undefined -> 128.
/// Rows are port-C sectors.
void write_visibility_pgm(std::ostream &out, const Grid2D<std::optional<double>> &visibility);
/// Companion mask: 255 where defined, 0 where undefined.
void write_mask_pgm(std::ostream &out, const Grid2D<std::optional<double>> &visibility);

}  // namespace homcorr

#endif
