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

#include <cmath>

#include "homcorr/errors.h"

namespace homcorr {

namespace {

constexpr std::array<std::string_view, 8> kNames = {
    "checkerboard", "stripes", "bowtie_HH", "triangle_HA", "rad_pi_HH", "rad_pi_HV", "rad_pi_HA", "oam_HV",
};

bool negligible(double scaled_c_out) {
    return scaled_c_out <= kEpsZero;
}

}  // namespace

std::optional<AnalyticCase> parse_analytic_case(std::string_view name) {
    for (std::size_t k = 0; k < kNames.size(); k++) {
        if (kNames[k] == name) {
            return kAllAnalyticCases[k];
        }
    }
    return std::nullopt;
}

std::string_view analytic_case_name(AnalyticCase c) {
    return kNames[static_cast<std::size_t>(c)];
}

std::optional<double> analytic_visibility(AnalyticCase c, double phi_c, double phi_d) {
    const double cc = std::cos(phi_c);
    const double cd = std::cos(phi_d);
    const double sd = std::sin(phi_d);
    switch (c) {
        case AnalyticCase::Checkerboard:
            return std::cos(2 * phi_c) * std::cos(2 * phi_d);
        case AnalyticCase::Stripes:
            return 0.5 * std::cos(2 * (phi_c - phi_d));
        case AnalyticCase::BowtieHH: {
            double den = cc * cc + cd * cd;
            if (negligible(den / 2)) {
                return std::nullopt;
            }
            return 2 * cc * cd * std::cos(phi_c - phi_d) / den;
        }
        case AnalyticCase::TriangleHA: {
            double den = 2 + std::cos(2 * phi_c) - std::sin(2 * phi_d);
            if (negligible(den / 4)) {
                return std::nullopt;
            }
            return (std::cos(2 * phi_d) - std::sin(2 * phi_c) + std::cos(2 * (phi_c - phi_d))) / den;
        }
        case AnalyticCase::RadPiHH:
            if (negligible(cc * cc * cd * cd)) {
                return std::nullopt;
            }
            return 1.0;
        case AnalyticCase::RadPiHV:
            if (negligible(cc * cc * sd * sd)) {
                return std::nullopt;
            }
            return -1.0;
        case AnalyticCase::RadPiHA:
            if (negligible(cc * cc)) {
                return std::nullopt;
            }
            return std::cos(2 * phi_d);
        case AnalyticCase::OamHV: {
            double den = cc * cc + sd * sd;
            if (negligible(den / 2)) {
                return std::nullopt;
            }
            return 2 * cc * sd * std::sin(phi_c - phi_d) / den;
        }
    }
    throw ConfigError("unknown analytic case");
}

std::optional<double> analytic_visibility(std::string_view name, double phi_c, double phi_d) {
    auto c = parse_analytic_case(name);
    if (!c) {
        throw ConfigError("unknown analytic case '" + std::string(name) + "'");
    }
    return analytic_visibility(*c, phi_c, phi_d);
}

double stripes_single_period_visibility(double phi_c, double phi_d) {
    return 0.5 * std::cos(phi_c - phi_d);
}

CaseSetup analytic_case_setup(AnalyticCase c) {
    using S = StandardState;
    ModeField rad = make_named_mode(NamedMode::RadialVV);
    ModeField pi = make_named_mode(NamedMode::PiVV);
    ModeField oam = make_named_mode(NamedMode::OamCircular, 1);
    switch (c) {
        case AnalyticCase::Checkerboard:
            return {rad, pi, ProjectionPair::none()};
        case AnalyticCase::Stripes:
            return {rad, oam, ProjectionPair::none()};
        case AnalyticCase::BowtieHH:
            return {rad, oam, ProjectionPair::of(S::H, S::H)};
        case AnalyticCase::TriangleHA:
            return {rad, oam, ProjectionPair::of(S::H, S::A)};
        case AnalyticCase::RadPiHH:
            return {rad, pi, ProjectionPair::of(S::H, S::H)};
        case AnalyticCase::RadPiHV:
            return {rad, pi, ProjectionPair::of(S::H, S::V)};
        case AnalyticCase::RadPiHA:
            return {rad, pi, ProjectionPair::of(S::H, S::A)};
        case AnalyticCase::OamHV:
            return {rad, oam, ProjectionPair::of(S::H, S::V)};
    }
    throw ConfigError("unknown analytic case");
}

}  // namespace homcorr
