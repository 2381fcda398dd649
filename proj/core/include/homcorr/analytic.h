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

#ifndef HOMCORR_ANALYTIC_H
#define HOMCORR_ANALYTIC_H

#include <array>
#include <optional>
#include <string_view>

#include "homcorr/correlation.h"
#include "homcorr/modes.h"

namespace homcorr {

/// Closed-form visibility patterns for photon A in radial_vv and photon B in
/// pi_vv or oam_circular (l = 1), with the listed (port C, port D) polarizers.
enum class AnalyticCase {
    Checkerboard,  // rad / pi, no polarizers:   cos 2phiC cos 2phiD
    Stripes,       // rad / oam, no polarizers:  cos 2(phiC - phiD) / 2
    BowtieHH,      // rad / oam, (H, H)
    TriangleHA,    // rad / oam, (H, A)
    RadPiHH,       // rad / pi,  (H, H):         1
    RadPiHV,       // rad / pi,  (H, V):         -1
    RadPiHA,       // rad / pi,  (H, A):         cos 2phiD
    OamHV,         // rad / oam, (H, V)
};

inline constexpr std::array<AnalyticCase, 8> kAllAnalyticCases = {
    AnalyticCase::Checkerboard, AnalyticCase::Stripes, AnalyticCase::BowtieHH, AnalyticCase::TriangleHA,
    AnalyticCase::RadPiHH,      AnalyticCase::RadPiHV, AnalyticCase::RadPiHA,  AnalyticCase::OamHV,
};

std::optional<AnalyticCase> parse_analytic_case(std::string_view name);
std::string_view analytic_case_name(AnalyticCase c);

/// Closed-form visibility, or nullopt where the case's C_out (scaled to a unit
/// maximum) is <= kEpsZero, matching the engine's undefined-cell rule.
std::optional<double> analytic_visibility(AnalyticCase c, double phi_c, double phi_d);
/// By name; throws ConfigError for unknown cases.
std::optional<double> analytic_visibility(std::string_view name, double phi_c, double phi_d);

/// The alternative stripe formula cos(phiC - phiD) / 2, kept for the discrepancy report.
double stripes_single_period_visibility(double phi_c, double phi_d);

struct CaseSetup {
    ModeField mode_a;
    ModeField mode_b;
    ProjectionPair projection;
};

CaseSetup analytic_case_setup(AnalyticCase c);

}  // namespace homcorr

#endif
