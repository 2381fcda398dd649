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

#include "homcorr/map_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "homcorr/errors.h"
#include "homcorr/version.h"

namespace homcorr {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

namespace {

template <typename Cell>
void write_csv(std::ostream &out, const AngularGrid &grid_c, const AngularGrid &grid_d, const Grid2D<Cell> &values,
               double (*to_double)(const Cell &)) {
    if (values.rows() != static_cast<std::size_t>(grid_c.size()) ||
        values.cols() != static_cast<std::size_t>(grid_d.size())) {
        throw std::invalid_argument("matrix shape does not match the sector grids");
    }
    std::string line = "phi_c/phi_d";
    for (int j = 0; j < grid_d.size(); j++) {
        line += ',';
        line += format_double(grid_d.center(j));
    }
    out << line << '\n';
    for (int i = 0; i < grid_c.size(); i++) {
        line = format_double(grid_c.center(i));
        for (int j = 0; j < grid_d.size(); j++) {
            line += ',';
            line += format_double(to_double(values(i, j)));
        }
        out << line << '\n';
    }
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> fields;
    while (true) {
        auto comma = s.find(',');
        fields.push_back(s.substr(0, comma));
        if (comma == std::string_view::npos) {
            return fields;
        }
        s.remove_prefix(comma + 1);
    }
}

void write_file(const std::filesystem::path &path, const std::string &what, auto &&body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing " + what);
    }
    body(f);
    if (!f) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

void write_matrix_csv(std::ostream &out, const AngularGrid &grid_c, const AngularGrid &grid_d,
                      const Grid2D<double> &values) {
    write_csv<double>(out, grid_c, grid_d, values, [](const double &v) { return v; });
}

void write_matrix_csv(std::ostream &out, const AngularGrid &grid_c, const AngularGrid &grid_d,
                      const Grid2D<std::optional<double>> &values) {
    write_csv<std::optional<double>>(out, grid_c, grid_d, values, [](const std::optional<double> &v) {
        return v ? *v : std::numeric_limits<double>::quiet_NaN();
    });
}

Grid2D<double> MatrixCsv::dense() const {
    Grid2D<double> r(values.rows(), values.cols());
    for (std::size_t k = 0; k < values.data().size(); k++) {
        if (!values.data()[k]) {
            throw FormatError("matrix has undefined cells where numbers are required");
        }
        r.data()[k] = *values.data()[k];
    }
    return r;
}

MatrixCsv read_matrix_csv(std::istream &in) {
    MatrixCsv m;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &why) {
        throw FormatError("matrix csv line " + std::to_string(line_no) + ": " + why);
    };
    auto number = [&](std::string_view field) {
        auto v = parse_double(field);
        if (!v) {
            fail("not a number: '" + std::string(field) + "'");
        }
        return *v;
    };
    std::vector<std::optional<double>> cells;
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split_commas(line);
        if (!have_header) {
            if (fields.size() < 2) {
                fail("header needs at least one column");
            }
            for (std::size_t j = 1; j < fields.size(); j++) {
                m.phi_d.push_back(number(fields[j]));
            }
            have_header = true;
            continue;
        }
        if (fields.size() != m.phi_d.size() + 1) {
            fail("expected " + std::to_string(m.phi_d.size() + 1) + " fields, got " +
                 std::to_string(fields.size()));
        }
        m.phi_c.push_back(number(fields[0]));
        for (std::size_t j = 1; j < fields.size(); j++) {
            double v = number(fields[j]);
            cells.push_back(std::isnan(v) ? std::nullopt : std::optional<double>(v));
        }
    }
    if (!have_header) {
        throw FormatError("matrix csv is empty");
    }
    if (m.phi_c.empty()) {
        throw FormatError("matrix csv has a header but no rows");
    }
    m.values = Grid2D<std::optional<double>>(m.phi_c.size(), m.phi_d.size());
    std::copy(cells.begin(), cells.end(), m.values.data().begin());
    return m;
}

MatrixCsv read_matrix_csv(const std::filesystem::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw FormatError("cannot open " + path.string());
    }
    return read_matrix_csv(f);
}

nlohmann::json jones_to_json(const JonesVector &v) {
    return {{"h", {v.h.real(), v.h.imag()}}, {"v", {v.v.real(), v.v.imag()}}};
}

nlohmann::json projection_to_json(const ProjectionPair &p) {
    nlohmann::json j = nlohmann::json::object();
    j["pc"] = p.pc ? jones_to_json(*p.pc) : nlohmann::json();
    j["pd"] = p.pd ? jones_to_json(*p.pd) : nlohmann::json();
    return j;
}

void write_map_files(const std::filesystem::path &dir, const CorrelationMap &map, nlohmann::json metadata,
                     MapContents contents) {
    std::filesystem::create_directories(dir);
    if (contents.c_in) {
        write_file(dir / "c_in.csv", "c_in", [&](std::ostream &f) { write_matrix_csv(f, map.grid_c, map.grid_d, map.c_in); });
    }
    if (contents.c_out) {
        write_file(dir / "c_out.csv", "c_out",
                   [&](std::ostream &f) { write_matrix_csv(f, map.grid_c, map.grid_d, map.c_out); });
    }
    if (contents.visibility) {
        write_file(dir / "visibility.csv", "visibility",
                   [&](std::ostream &f) { write_matrix_csv(f, map.grid_c, map.grid_d, map.visibility); });
    }
    if (!metadata.is_object()) {
        metadata = nlohmann::json::object();
    }
    metadata["grid"] = {{"sectors_c", map.grid_c.size()}, {"sectors_d", map.grid_d.size()}, {"first_center", 0.0}};
    metadata["eps_zero"] = kEpsZero;
    metadata["defined_cells"] = map.defined_cells();
    metadata["version"] = std::string(kVersion);
    write_file(dir / "meta.json", "metadata", [&](std::ostream &f) { f << metadata.dump(2) << '\n'; });
}

namespace {

void write_pgm(std::ostream &out, const Grid2D<std::optional<double>> &v, auto &&pixel) {
    out << "P5\n" << v.cols() << ' ' << v.rows() << "\n255\n";
    std::string row(v.cols(), '\0');
    for (std::size_t i = 0; i < v.rows(); i++) {
        for (std::size_t j = 0; j < v.cols(); j++) {
            row[j] = static_cast<char>(pixel(v(i, j)));
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

}  // namespace

void write_visibility_pgm(std::ostream &out, const Grid2D<std::optional<double>> &visibility) {
    write_pgm(out, visibility, [](const std::optional<double> &v) -> unsigned char {
        if (!v) {
            return 128;
        }
        double x = std::clamp(*v, -1.0, 1.0);
        return static_cast<unsigned char>(std::lround((x + 1.0) * 127.5));
    });
}

void write_mask_pgm(std::ostream &out, const Grid2D<std::optional<double>> &visibility) {
    write_pgm(out, visibility, [](const std::optional<double> &v) -> unsigned char { return v ? 255 : 0; });
}

}  // namespace homcorr
