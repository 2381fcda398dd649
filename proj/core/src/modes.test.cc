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

#include "homcorr/modes.h"

#include <numbers>

#include "gtest/gtest.h"

#include "homcorr/errors.h"
#include "random_fields.test.h"

using namespace homcorr;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> phi_samples(int n) {
    std::vector<double> r(n);
    for (int k = 0; k < n; k++) {
        r[k] = 2 * kPi * k / n;
    }
    return r;
}

double distance(const JonesVector &a, const JonesVector &b) {
    return std::sqrt((a - b).norm2());
}

}  // namespace

TEST(modes, named_mode_values) {
    auto rad = make_named_mode(NamedMode::RadialVV);
    auto pi = make_named_mode(NamedMode::PiVV);
    EXPECT_LE(distance(rad.eval(1, 0), {1.0, 0.0}), 1e-15);
    EXPECT_LE(distance(pi.eval(1, kPi / 2), {0.0, -1.0}), 1e-15);
    EXPECT_LE(std::abs(inner(rad.eval(1, kPi / 4), pi.eval(1, kPi / 4))), 1e-15);

    auto oam = make_named_mode("oam_circular", 3);
    const double s = 1 / std::sqrt(2.0);
    JonesVector expected{std::polar(s, 3 * 0.7), Complex(0, 1) * std::polar(s, 3 * 0.7)};
    EXPECT_LE(distance(oam.eval(5.0, 0.7), expected), 1e-15);
    EXPECT_TRUE(oam.azimuthal_only());
    EXPECT_FALSE(oam.radial_envelope().has_value());
}

TEST(modes, named_mode_names) {
    for (auto m : {NamedMode::RadialVV, NamedMode::PiVV, NamedMode::OamCircular}) {
        EXPECT_EQ(parse_named_mode(named_mode_name(m)), m);
    }
    EXPECT_THROW(make_named_mode("radial"), ConfigError);
    EXPECT_FALSE(parse_named_mode("").has_value());
}

TEST(modes, named_modes_are_unit_and_periodic) {
    for (int l : {-2, -1, 0, 1, 2}) {
        for (auto m : {NamedMode::RadialVV, NamedMode::PiVV, NamedMode::OamCircular}) {
            auto f = make_named_mode(m, l);
            for (double phi : phi_samples(97)) {
                ASSERT_NEAR(f.eval(1, phi).norm2(), 1.0, 1e-12);
                ASSERT_LE(distance(f.eval(1, phi), f.eval(1, phi + 2 * kPi)), 1e-9);
            }
        }
    }
}

TEST(modes, fluence_profiles) {
    EXPECT_EQ(fluence(RadialProfile::unit(), 0.0), 1.0);
    EXPECT_EQ(fluence(RadialProfile::unit(), 123.0), 1.0);
    EXPECT_EQ(fluence(RadialProfile::gaussian(1.0), 0.0), 1.0);
    EXPECT_NEAR(fluence(RadialProfile::gaussian(2.0), 2.0), std::exp(-2.0), 1e-15);
    EXPECT_EQ(fluence(RadialProfile::lg_ring(1.0, 1), 0.0), 0.0);
    auto ring = RadialProfile::lg_ring(3.0, 1);
    double peak = fluence_peak_radius(ring);
    EXPECT_NEAR(peak, 3.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(fluence(ring, peak), 1.0, 1e-15);
    EXPECT_LT(fluence(ring, peak * 0.9), 1.0);
    EXPECT_LT(fluence(ring, peak * 1.1), 1.0);
    EXPECT_THROW(fluence(RadialProfile::unit(), -1e-9), std::domain_error);
    EXPECT_THROW(fluence(ring, std::nan("")), std::domain_error);
}

TEST(modes, retarders_are_unitary_and_polarizer_contracts) {
    auto rng = fixtures::test_rng(3);
    std::vector<OpticalElement> elements = {OpticalElement::hwp(0.3), OpticalElement::qwp(-1.1),
                                            OpticalElement::qplate(0.5), OpticalElement::qplate(1.5, 0.4, 0.2),
                                            OpticalElement::qplate(-1.0)};
    for (int trial = 0; trial < 200; trial++) {
        JonesVector x = fixtures::random_unit_jones(rng);
        double phi = fixtures::random_angle(rng);
        for (const auto &e : elements) {
            ASSERT_TRUE(e.is_unitary());
            ASSERT_NEAR((e.matrix_at(phi) * x).norm2(), 1.0, 1e-12) << e.describe();
        }
        auto pol = OpticalElement::polarizer(fixtures::random_angle(rng));
        ASSERT_FALSE(pol.is_unitary());
        ASSERT_LE((pol.matrix_at(phi) * x).norm2(), 1.0 + 1e-12);
    }
}

TEST(modes, half_wave_plate_is_reflection) {
    auto m = OpticalElement::hwp(0.0).matrix_at(0.0);
    EXPECT_LE(std::abs(m.m[0][0] - 1.0), 1e-15);
    EXPECT_LE(std::abs(m.m[1][1] + 1.0), 1e-15);
    EXPECT_LE(std::abs(m.m[0][1]), 1e-15);
    // HWP at 22.5 degrees turns H into D.
    auto d = OpticalElement::hwp(kPi / 8).matrix_at(0.0) * standard_state(StandardState::H);
    EXPECT_LE(distance(d, standard_state(StandardState::D)), 1e-15);
}

TEST(modes, zero_retardance_qplate_is_identity) {
    auto rng = fixtures::test_rng(4);
    auto field = fixtures::random_smooth_field(rng);
    auto out = apply_element(field, OpticalElement::qplate(0.5, 0.0));
    for (double phi : phi_samples(360)) {
        ASSERT_LE(distance(out.eval(1, phi), field.eval(1, phi)), 1e-15);
    }
}

TEST(modes, qplate_on_uniform_h_gives_radial) {
    auto out = apply_element(uniform_mode(standard_state(StandardState::H)), OpticalElement::qplate(0.5));
    auto rad = make_named_mode(NamedMode::RadialVV);
    auto phis = phi_samples(360);
    auto cmp = compare_up_to_global_phase(out, rad, phis);
    EXPECT_LE(cmp.max_abs_diff, 1e-12);
    // The sign convention is fixed so that no phase is needed.
    EXPECT_LE(std::abs(cmp.phase - 1.0), 1e-12);
}

TEST(modes, qplate_swaps_circular_handedness) {
    auto phis = phi_samples(360);
    const double s = 1 / std::sqrt(2.0);
    for (double q : {0.5, 1.0, 1.5}) {
        auto from_l = apply_element(uniform_mode(standard_state(StandardState::L)), OpticalElement::qplate(q));
        ModeField expect_r("R", [q, s](double, double phi) {
            Complex w = std::polar(s, 2 * q * phi);
            return JonesVector{w, Complex(0, -1) * w};
        });
        EXPECT_LE(compare_up_to_global_phase(from_l, expect_r, phis).max_abs_diff, 1e-12) << q;

        auto from_r = apply_element(uniform_mode(standard_state(StandardState::R)), OpticalElement::qplate(q));
        ModeField expect_l("L", [q, s](double, double phi) {
            Complex w = std::polar(s, -2 * q * phi);
            return JonesVector{w, Complex(0, 1) * w};
        });
        EXPECT_LE(compare_up_to_global_phase(from_r, expect_l, phis).max_abs_diff, 1e-12) << q;
    }
}

TEST(modes, standard_preparations_match_closed_forms) {
    auto phis = phi_samples(360);
    for (int l : {-2, -1, 1, 2, 3}) {
        for (auto m : {NamedMode::RadialVV, NamedMode::PiVV, NamedMode::OamCircular}) {
            auto prepared = prepare_mode(standard_preparation(m, l), "prepared");
            EXPECT_EQ(prepared.label(), "prepared");
            auto cmp = compare_up_to_global_phase(prepared, make_named_mode(m, l), phis);
            EXPECT_LE(cmp.max_abs_diff, 1e-9) << named_mode_name(m) << " l=" << l;
        }
    }
}

TEST(modes, global_phase_comparison_finds_the_phase) {
    auto rng = fixtures::test_rng(5);
    auto field = fixtures::random_smooth_field(rng);
    Complex p = fixtures::random_phase(rng);
    auto phis = phi_samples(64);
    auto cmp = compare_up_to_global_phase(field.with_global_phase(p), field, phis);
    EXPECT_LE(std::abs(cmp.phase - p), 1e-12);
    EXPECT_LE(cmp.max_abs_diff, 1e-12);

    auto rad = make_named_mode(NamedMode::RadialVV);
    auto pi = make_named_mode(NamedMode::PiVV);
    EXPECT_GT(compare_up_to_global_phase(rad, pi, phis).max_abs_diff, 0.5);
}

TEST(modes, envelope_and_labels_are_carried) {
    auto rad = make_named_mode(NamedMode::RadialVV).with_envelope(RadialProfile::lg_ring(2.0, 1));
    auto moved = apply_element(rad, OpticalElement::hwp(0.1));
    ASSERT_TRUE(moved.radial_envelope().has_value());
    EXPECT_EQ(*moved.radial_envelope(), RadialProfile::lg_ring(2.0, 1));
    EXPECT_NE(moved.label().find("hwp"), std::string::npos);
    EXPECT_EQ(rad.relabeled("x").label(), "x");
}

TEST(modes, element_kind_names) {
    EXPECT_EQ(parse_element_kind("qplate"), OpticalElement::Kind::QPlate);
    EXPECT_EQ(parse_element_kind("hwp"), OpticalElement::Kind::Hwp);
    EXPECT_EQ(parse_element_kind("qwp"), OpticalElement::Kind::Qwp);
    EXPECT_EQ(parse_element_kind("polarizer"), OpticalElement::Kind::Polarizer);
    EXPECT_FALSE(parse_element_kind("lens").has_value());
}
