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

#include "homcorr/analytic.h"

#include <numbers>

#include "gtest/gtest.h"

#include "homcorr/errors.h"

using namespace homcorr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(analytic, documented_values) {
    EXPECT_NEAR(*analytic_visibility(AnalyticCase::Checkerboard, 0, kPi / 2), -1.0, 1e-15);
    EXPECT_EQ(*analytic_visibility(AnalyticCase::RadPiHV, 0.3, 1.2), -1.0);
    EXPECT_NEAR(*analytic_visibility(AnalyticCase::BowtieHH, 0, 0), 1.0, 1e-15);
    EXPECT_NEAR(*analytic_visibility(AnalyticCase::Stripes, 0.4, 0.4), 0.5, 1e-15);
    EXPECT_NEAR(*analytic_visibility(AnalyticCase::RadPiHA, 0.1, 0.5), std::cos(1.0), 1e-15);
    EXPECT_EQ(*analytic_visibility(AnalyticCase::RadPiHH, 0.2, 2.0), 1.0);
    EXPECT_NEAR(stripes_single_period_visibility(0.0, kPi), -0.5, 1e-15);
}

TEST(analytic, undefined_where_out_vanishes) {
    EXPECT_FALSE(analytic_visibility(AnalyticCase::RadPiHH, kPi / 2, 0.3).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::RadPiHH, 0.3, kPi / 2).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::RadPiHV, 0.3, 0.0).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::RadPiHA, kPi / 2, 0.3).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::BowtieHH, kPi / 2, kPi / 2).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::OamHV, kPi / 2, 0.0).has_value());
    EXPECT_FALSE(analytic_visibility(AnalyticCase::TriangleHA, kPi / 2, kPi / 4).has_value());
    EXPECT_TRUE(analytic_visibility(AnalyticCase::Checkerboard, kPi / 2, kPi / 2).has_value());
}

TEST(analytic, names_round_trip) {
    for (auto c : kAllAnalyticCases) {
        EXPECT_EQ(parse_analytic_case(analytic_case_name(c)), c);
        EXPECT_EQ(analytic_visibility(analytic_case_name(c), 0.2, 0.7), analytic_visibility(c, 0.2, 0.7));
    }
    EXPECT_THROW(analytic_visibility("stripe", 0, 0), ConfigError);
    EXPECT_FALSE(parse_analytic_case("BOWTIE_HH").has_value());
}

TEST(analytic, values_are_bounded) {
    for (auto c : kAllAnalyticCases) {
        for (int i = 0; i < 90; i++) {
            for (int j = 0; j < 90; j++) {
                auto v = analytic_visibility(c, 2 * kPi * i / 90, 2 * kPi * j / 90);
                if (v) {
                    ASSERT_LE(std::abs(*v), 1.0 + 1e-12) << analytic_case_name(c);
                }
            }
        }
    }
}

TEST(analytic, case_setups_use_expected_modes) {
    auto stripes = analytic_case_setup(AnalyticCase::Stripes);
    EXPECT_EQ(stripes.mode_a.label(), "radial_vv");
    EXPECT_TRUE(stripes.projection.empty());
    auto tri = analytic_case_setup(AnalyticCase::TriangleHA);
    ASSERT_TRUE(tri.projection.pd.has_value());
    EXPECT_EQ(*tri.projection.pd, standard_state(StandardState::A));
    EXPECT_EQ(analytic_case_setup(AnalyticCase::RadPiHV).mode_b.label(), "pi_vv");
}
