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

#ifndef HOMCORR_VERIFICATION_H
#define HOMCORR_VERIFICATION_H

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "homcorr/analytic.h"
#include "homcorr/correlation.h"

namespace homcorr {

/// The Fock oracle's state space grows as n^2; larger grids are refused.
inline constexpr int kMaxOracleSectors = 32;
inline constexpr double kOracleTolerance = 1e-10;

/// Map producer under test. The default wraps correlation_map.
using EngineFn = std::function<CorrelationMap(const CaseSetup &setup, const AngularGrid &grid)>;
EngineFn default_engine();

struct MapDeviation {
    double c_in = 0.0;
    double c_out = 0.0;
    /// Over cells defined in both maps; infinite if the undefined masks differ.
    double visibility = 0.0;
    bool masks_match = true;

    double worst() const;
};

MapDeviation compare_maps(const CorrelationMap &expected, const CorrelationMap &actual);

struct CaseDeviation {
    AnalyticCase which;
    int sectors;
    MapDeviation deviation;
};

/// Which stripe period the oracle supports for radial_vv vs oam_circular(l=1).
struct StripeDiscrepancy {
    int sectors = 0;
    /// max |V_oracle - cos 2(phiC - phiD)/2|
    double two_period_deviation = 0.0;
    /// max |V_oracle - cos(phiC - phiD)/2|
    double single_period_deviation = 0.0;

    bool two_period_confirmed(double tol = kOracleTolerance) const {
        return two_period_deviation <= tol;
    }
    bool single_period_confirmed(double tol = kOracleTolerance) const {
        return single_period_deviation <= tol;
    }
};

StripeDiscrepancy stripe_discrepancy(int sectors);

struct VerificationReport {
    std::vector<CaseDeviation> cases;
    StripeDiscrepancy stripes;
    double tolerance = kOracleTolerance;

    double worst() const;
    bool passed() const {
        return worst() <= tolerance;
    }
};

/// Compares the engine to the Fock oracle for every analytic case at every
/// sector count. Throws ConfigError for sector counts outside [2, kMaxOracleSectors].
VerificationReport verify_engine(std::span<const int> sector_counts, const EngineFn &engine = default_engine(),
                                 double tolerance = kOracleTolerance);

std::string format_report(const VerificationReport &report);

}  // namespace homcorr

#endif
