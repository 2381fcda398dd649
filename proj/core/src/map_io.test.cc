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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "homcorr/errors.h"
#include "random_fields.test.h"

using namespace homcorr;

TEST(map_io, shortest_round_trip_doubles) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-0.0), "-0");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    auto rng = fixtures::test_rng(30);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 1000; k++) {
        double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
        auto parsed = parse_double(format_double(v));
        ASSERT_TRUE(parsed.has_value());
        ASSERT_EQ(*parsed, v);
    }
    EXPECT_FALSE(parse_double("").has_value());
    EXPECT_FALSE(parse_double("1.5x").has_value());
    EXPECT_FALSE(parse_double(" 1").has_value());
    EXPECT_TRUE(std::isnan(*parse_double("nan")));
}

TEST(map_io, matrix_csv_layout) {
    AngularGrid gc(2);
    AngularGrid gd(3);
    Grid2D<std::optional<double>> v(2, 3);
    v(0, 0) = 0.25;
    v(1, 2) = -1.0;
    std::ostringstream out;
    write_matrix_csv(out, gc, gd, v);
    std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "phi_c/phi_d,0," + format_double(gd.center(1)) + "," + format_double(gd.center(2)));
    EXPECT_NE(text.find("\n0,0.25,nan,nan\n"), std::string::npos);
    EXPECT_NE(text.find(format_double(gc.center(1)) + ",nan,nan,-1\n"), std::string::npos);
    EXPECT_THROW(write_matrix_csv(out, gd, gc, v), std::invalid_argument);
}

TEST(map_io, matrix_csv_round_trip_is_bit_exact) {
    auto rng = fixtures::test_rng(31);
    auto a = fixtures::random_smooth_field(rng);
    auto b = fixtures::random_smooth_field(rng);
    AngularGrid g(28);
    auto m = correlation_map(a, b, g, g);
    std::stringstream io;
    write_matrix_csv(io, g, g, m.c_in);
    auto back = read_matrix_csv(io);
    EXPECT_EQ(back.dense(), m.c_in);
    EXPECT_EQ(back.phi_c, g.centers());
    EXPECT_EQ(back.phi_d, g.centers());

    std::stringstream vis;
    write_matrix_csv(vis, g, g, m.visibility);
    EXPECT_EQ(read_matrix_csv(vis).values, m.visibility);
}

TEST(map_io, undefined_cells_round_trip) {
    AngularGrid g(8);
    auto rad = make_named_mode(NamedMode::RadialVV);
    auto pi = make_named_mode(NamedMode::PiVV);
    auto m = correlation_map(rad, pi, g, g, ProjectionPair::of(StandardState::H, StandardState::H));
    ASSERT_LT(m.defined_cells(), 64u);
    std::stringstream io;
    write_matrix_csv(io, g, g, m.visibility);
    auto back = read_matrix_csv(io);
    EXPECT_EQ(back.values, m.visibility);
    EXPECT_THROW(back.dense(), FormatError);
}

TEST(map_io, malformed_matrices_name_the_line) {
    auto parse = [](const std::string &s) {
        std::istringstream in(s);
        return read_matrix_csv(in);
    };
    EXPECT_THROW(parse(""), FormatError);
    EXPECT_THROW(parse("phi_c/phi_d,0,1\n"), FormatError);
    try {
        parse("phi_c/phi_d,0,1\n0,1,2\n1,1,oops\n");
        FAIL();
    } catch (const FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    try {
        parse("phi_c/phi_d,0,1\n0,1\n");
        FAIL();
    } catch (const FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(map_io, map_files_and_metadata) {
    auto dir = std::filesystem::temp_directory_path() / "homcorr_map_io_test";
    std::filesystem::remove_all(dir);
    AngularGrid g(4);
    auto m = correlation_map(make_named_mode(NamedMode::RadialVV), make_named_mode(NamedMode::PiVV), g, g);
    write_map_files(dir, m, {{"mode_a", "radial_vv"}}, {true, false, true});
    EXPECT_TRUE(std::filesystem::exists(dir / "c_in.csv"));
    EXPECT_FALSE(std::filesystem::exists(dir / "c_out.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "visibility.csv"));
    std::ifstream meta_in(dir / "meta.json");
    auto meta = nlohmann::json::parse(meta_in);
    EXPECT_EQ(meta["mode_a"], "radial_vv");
    EXPECT_EQ(meta["grid"]["sectors_c"], 4);
    EXPECT_EQ(meta["eps_zero"], kEpsZero);
    EXPECT_EQ(meta["defined_cells"], 16);
    EXPECT_TRUE(meta.contains("version"));
    EXPECT_EQ(read_matrix_csv(dir / "c_in.csv").dense(), m.c_in);
    std::filesystem::remove_all(dir);
}

TEST(map_io, projection_json) {
    auto j = projection_to_json(ProjectionPair{standard_state(StandardState::L), std::nullopt});
    EXPECT_NEAR(j["pc"]["v"][1].get<double>(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(j["pd"].is_null());
}

TEST(map_io, graymaps) {
    Grid2D<std::optional<double>> v(2, 2);
    v(0, 0) = -1.0;
    v(0, 1) = 1.0;
    v(1, 0) = 0.0;
    std::ostringstream img;
    write_visibility_pgm(img, v);
    std::string s = img.str();
    std::string header = "P5\n2 2\n255\n";
    ASSERT_EQ(s.substr(0, header.size()), header);
    std::string px = s.substr(header.size());
    ASSERT_EQ(px.size(), 4u);
    EXPECT_EQ(static_cast<unsigned char>(px[0]), 0);
    EXPECT_EQ(static_cast<unsigned char>(px[1]), 255);
    EXPECT_EQ(static_cast<unsigned char>(px[2]), 128);
    EXPECT_EQ(static_cast<unsigned char>(px[3]), 128);

    std::ostringstream mask;
    write_mask_pgm(mask, v);
    std::string m = mask.str().substr(header.size());
    EXPECT_EQ(static_cast<unsigned char>(m[2]), 255);
    EXPECT_EQ(static_cast<unsigned char>(m[3]), 0);
}
