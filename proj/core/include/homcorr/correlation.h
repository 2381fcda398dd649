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

#ifndef HOMCORR_CORRELATION_H
#define HOMCORR_CORRELATION_H

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "homcorr/grid.h"
#include "homcorr/jones.h"
#include "homcorr/modes.h"

namespace homcorr {

/// Visibility cells are undefined where C_out <= kEpsZero * max(C_out) over the map.
inline constexpr double kEpsZero = 1e-12;

enum class Temporal { In, Out };

std::optional<Temporal> parse_temporal(std::string_view name);
std::string_view temporal_name(Temporal t);

/// Optional polarizers in front of output ports C and D.
///
/// With no polarizer in either port the detection sums over a full
/// orthonormal basis. A single polarizer restricts only its own port.
struct ProjectionPair {
    std::optional<JonesVector> pc;
    std::optional<JonesVector> pd;

    static ProjectionPair none() {
        return {};
    }
    static ProjectionPair of(StandardState c, StandardState d) {
        return {standard_state(c), standard_state(d)};
    }
    bool empty() const {
        return !pc && !pd;
    }
    /// Throws std::invalid_argument if a present polarizer vector is not unit norm.
    void validate(double tol = 1e-12) const;
};

struct TransversePoint {
    double r = 1.0;
    double phi = 0.0;
};

struct Coincidences {
    double c_in = 0.0;
    double c_out = 0.0;
};

/// Both coincidence probabilities at one detector pair.
///
/// C_in  = A/4 sum_{a,b} |<u_a,eA(rc)><u_b,eB(rd)> - <u_a,eB(rc)><u_b,eA(rd)>|^2
/// C_out = A/4 sum_{a,b} (|<u_a,eA(rc)><u_b,eB(rd)>|^2 + |<u_a,eB(rc)><u_b,eA(rd)>|^2)
/// where u_a runs over `basis` (or is the port-C polarizer) and likewise u_b for port D.
/// A = F(r_C) F(r_D) from the shared radial envelope, 1 when neither mode carries one.
Coincidences coincidences(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                          const ProjectionPair &proj = {}, const PolarizationBasis &basis = hv_basis());

double coincidence_in(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                      const ProjectionPair &proj = {}, const PolarizationBasis &basis = hv_basis());
double coincidence_out(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                       const ProjectionPair &proj = {}, const PolarizationBasis &basis = hv_basis());

/// (C_out - C_in) / C_out, or nullopt when C_out <= eps_zero.
std::optional<double> visibility(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                                 const ProjectionPair &proj = {}, double eps_zero = kEpsZero);

/// Visibility from a coincidence pair with an absolute undefined threshold.
std::optional<double> visibility_from(const Coincidences &c, double eps_zero);

/// Product of the two fluences; throws std::invalid_argument when the modes carry different envelopes.
double fluence_factor(const ModeField &a, const ModeField &b, double r_c, double r_d);

struct CorrelationMap {
    AngularGrid grid_c;
    AngularGrid grid_d;
    Grid2D<double> c_in;
    Grid2D<double> c_out;
    Grid2D<std::optional<double>> visibility;

    std::size_t defined_cells() const;
    const Grid2D<double> &coincidences(Temporal t) const {
        return t == Temporal::In ? c_in : c_out;
    }
};

/// Fills the visibility matrix from c_in / c_out using the relative kEpsZero rule.
Grid2D<std::optional<double>> visibility_matrix(const Grid2D<double> &c_in, const Grid2D<double> &c_out,
                                                double relative_eps = kEpsZero);

struct MapOptions {
    /// Radius used for fields without a radial envelope.
    double reference_radius = 1.0;
    /// Quadrature nodes per port when integrating a radial envelope.
    int radial_nodes = 64;
    PolarizationBasis basis = hv_basis();
};

/// C_in, C_out and visibility on grid_c x grid_d (rows are port C sectors).
///
/// Sector values are taken at sector centers. When the modes carry a radial
/// envelope, C is integrated over r_C and r_D with weight r dr on both ports.
CorrelationMap correlation_map(const ModeField &a, const ModeField &b, const AngularGrid &grid_c,
                               const AngularGrid &grid_d, const ProjectionPair &proj = {},
                               const MapOptions &options = {});

struct HeraldedDistribution {
    std::vector<double> weights;
    /// True when the heralded row had no coincidences; weights are then all zero.
    bool empty = false;
};

/// Port-D distribution conditioned on a detection in port-C sector `herald_sector`.
/// Throws std::out_of_range for an invalid sector.
HeraldedDistribution heralded_distribution(const CorrelationMap &map, std::size_t herald_sector, Temporal temporal);

enum class Axis { C, D };

struct BucketVisibility {
    /// Indexed by the retained coordinate: (sum C_out - sum C_in) / sum C_out over the
    /// integrated coordinate, skipping cells whose visibility is undefined.
    std::vector<std::optional<double>> ratio_of_integrals;
    /// sum_j V_ij * (2 pi / n): the visibility integrated over the bucketed coordinate.
    std::vector<std::optional<double>> integral_of_ratios;
};

BucketVisibility bucket_visibility(const CorrelationMap &map, Axis retained);

}  // namespace homcorr

#endif
