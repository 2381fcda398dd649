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

#include "homcorr/verification.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "homcorr/errors.h"
#include "homcorr/fock_oracle.h"

namespace homcorr {

EngineFn default_engine() {
    return [](const CaseSetup &setup, const AngularGrid &grid) {
        return correlation_map(setup.mode_a, setup.mode_b, grid, grid, setup.projection);
    };
}

double MapDeviation::worst() const {
    if (!masks_match) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max({c_in, c_out, visibility});
}

MapDeviation compare_maps(const CorrelationMap &expected, const CorrelationMap &actual) {
    MapDeviation d;
    if (expected.c_in.rows() != actual.c_in.rows() || expected.c_in.cols() != actual.c_in.cols()) {
        d.masks_match = false;
        return d;
    }
    for (std::size_t i = 0; i < expected.c_in.rows(); i++) {
        for (std::size_t j = 0; j < expected.c_in.cols(); j++) {
            d.c_in = std::max(d.c_in, std::abs(expected.c_in(i, j) - actual.c_in(i, j)));
            d.c_out = std::max(d.c_out, std::abs(expected.c_out(i, j) - actual.c_out(i, j)));
            const auto &ve = expected.visibility(i, j);
            const auto &va = actual.visibility(i, j);
            if (ve.has_value() != va.has_value()) {
                d.masks_match = false;
            } else if (ve) {
                d.visibility = std::max(d.visibility, std::abs(*ve - *va));
            }
        }
    }
    // NaNs in either map must not pass silently.
    if (std::isnan(d.c_in) || std::isnan(d.c_out) || std::isnan(d.visibility)) {
        d.masks_match = false;
    }
    return d;
}

StripeDiscrepancy stripe_discrepancy(int sectors) {
    CaseSetup setup = analytic_case_setup(AnalyticCase::Stripes);
    AngularGrid grid(sectors);
    CorrelationMap oracle = oracle_correlation_map(setup.mode_a, setup.mode_b, grid, setup.projection);
    StripeDiscrepancy s;
    s.sectors = sectors;
    for (int i = 0; i < sectors; i++) {
        for (int j = 0; j < sectors; j++) {
            const auto &v = oracle.visibility(i, j);
            if (!v) {
                s.two_period_deviation = std::numeric_limits<double>::infinity();
                continue;
            }
            double pc = grid.center(i);
            double pd = grid.center(j);
            s.two_period_deviation = std::max(s.two_period_deviation, std::abs(*v - 0.5 * std::cos(2 * (pc - pd))));
            s.single_period_deviation =
                std::max(s.single_period_deviation, std::abs(*v - stripes_single_period_visibility(pc, pd)));
        }
    }
    return s;
}

double VerificationReport::worst() const {
    double w = 0.0;
    for (const auto &c : cases) {
        w = std::max(w, c.deviation.worst());
    }
    return w;
}

VerificationReport verify_engine(std::span<const int> sector_counts, const EngineFn &engine, double tolerance) {
    VerificationReport report;
    report.tolerance = tolerance;
    int stripe_n = 0;
    for (int n : sector_counts) {
        if (n < 2 || n > kMaxOracleSectors) {
            throw ConfigError("oracle verification supports 2.." + std::to_string(kMaxOracleSectors) +
                              " sectors, got " + std::to_string(n));
        }
        AngularGrid grid(n);
        for (AnalyticCase c : kAllAnalyticCases) {
            CaseSetup setup = analytic_case_setup(c);
            CorrelationMap oracle = oracle_correlation_map(setup.mode_a, setup.mode_b, grid, setup.projection);
            CorrelationMap engine_map = engine(setup, grid);
            report.cases.push_back({c, n, compare_maps(oracle, engine_map)});
        }
        stripe_n = std::max(stripe_n, n);
    }
    if (stripe_n > 0) {
        report.stripes = stripe_discrepancy(stripe_n);
    }
    return report;
}

std::string format_report(const VerificationReport &report) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific;
    for (const auto &c : report.cases) {
        double w = c.deviation.worst();
        out << (w <= report.tolerance ? "PASS " : "FAIL ") << analytic_case_name(c.which) << " n=" << c.sectors
            << " dC_in=" << c.deviation.c_in << " dC_out=" << c.deviation.c_out << " dV=" << c.deviation.visibility
            << (c.deviation.masks_match ? "" : " undefined-mask-mismatch") << "\n";
    }
    const auto &s = report.stripes;
    if (s.sectors > 0) {
        out << "stripe period check (radial_vv vs oam_circular l=1, n=" << s.sectors << "):\n"
            << "  cos 2(phiC-phiD)/2 max deviation " << s.two_period_deviation
            << (s.two_period_confirmed() ? "  confirmed" : "  rejected") << "\n"
            << "  cos(phiC-phiD)/2   max deviation " << s.single_period_deviation
            << (s.single_period_confirmed() ? "  confirmed" : "  rejected") << "\n";
    }
    out << "worst deviation " << report.worst() << " (tolerance " << report.tolerance << ") "
        << (report.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace homcorr
