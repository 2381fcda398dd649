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

#include "homcorr/correlation.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace homcorr {

namespace {

/// Detector polarizations summed over in one port: either the polarizer or a full basis.
struct PortAnalyzer {
    std::array<JonesVector, 2> u;
    int count;

    PortAnalyzer(const std::optional<JonesVector> &polarizer, const PolarizationBasis &basis) {
        if (polarizer) {
            u = {*polarizer, JonesVector{}};
            count = 1;
        } else {
            u = basis.vectors();
            count = 2;
        }
    }
};

/// Field samples entering one detector pair.
struct Samples {
    JonesVector a_c;
    JonesVector b_c;
    JonesVector a_d;
    JonesVector b_d;
};

Coincidences unscaled(const Samples &s, const PortAnalyzer &pc, const PortAnalyzer &pd) {
    Coincidences r;
    for (int i = 0; i < pc.count; i++) {
        Complex ac = inner(pc.u[i], s.a_c);
        Complex bc = inner(pc.u[i], s.b_c);
        for (int j = 0; j < pd.count; j++) {
            Complex x = ac * inner(pd.u[j], s.b_d);
            Complex y = bc * inner(pd.u[j], s.a_d);
            r.c_in += std::norm(x - y);
            r.c_out += std::norm(x) + std::norm(y);
        }
    }
    r.c_in *= 0.25;
    r.c_out *= 0.25;
    return r;
}

std::optional<RadialProfile> shared_envelope(const ModeField &a, const ModeField &b) {
    const auto &ea = a.radial_envelope();
    const auto &eb = b.radial_envelope();
    if (ea && eb && !(*ea == *eb)) {
        throw std::invalid_argument("coincidence rates need both photons to share one radial envelope");
    }
    return ea ? ea : eb;
}

}  // namespace

std::optional<Temporal> parse_temporal(std::string_view name) {
    if (name == "in") {
        return Temporal::In;
    }
    if (name == "out") {
        return Temporal::Out;
    }
    return std::nullopt;
}

std::string_view temporal_name(Temporal t) {
    return t == Temporal::In ? "in" : "out";
}

void ProjectionPair::validate(double tol) const {
    if (pc && !pc->is_unit(tol)) {
        throw std::invalid_argument("port C polarizer vector is not unit norm");
    }
    if (pd && !pd->is_unit(tol)) {
        throw std::invalid_argument("port D polarizer vector is not unit norm");
    }
}

double fluence_factor(const ModeField &a, const ModeField &b, double r_c, double r_d) {
    auto env = shared_envelope(a, b);
    if (!env) {
        return 1.0;
    }
    return fluence(*env, r_c) * fluence(*env, r_d);
}

Coincidences coincidences(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                          const ProjectionPair &proj, const PolarizationBasis &basis) {
    Samples s{a.eval(rc.r, rc.phi), b.eval(rc.r, rc.phi), a.eval(rd.r, rd.phi), b.eval(rd.r, rd.phi)};
    Coincidences c = unscaled(s, PortAnalyzer(proj.pc, basis), PortAnalyzer(proj.pd, basis));
    double f = fluence_factor(a, b, rc.r, rd.r);
    c.c_in *= f;
    c.c_out *= f;
    return c;
}

double coincidence_in(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                      const ProjectionPair &proj, const PolarizationBasis &basis) {
    return coincidences(a, b, rc, rd, proj, basis).c_in;
}

double coincidence_out(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                       const ProjectionPair &proj, const PolarizationBasis &basis) {
    return coincidences(a, b, rc, rd, proj, basis).c_out;
}

std::optional<double> visibility_from(const Coincidences &c, double eps_zero) {
    if (!(c.c_out > eps_zero)) {
        return std::nullopt;
    }
    return (c.c_out - c.c_in) / c.c_out;
}

std::optional<double> visibility(const ModeField &a, const ModeField &b, TransversePoint rc, TransversePoint rd,
                                 const ProjectionPair &proj, double eps_zero) {
    return visibility_from(coincidences(a, b, rc, rd, proj), eps_zero);
}

std::size_t CorrelationMap::defined_cells() const {
    return std::count_if(visibility.data().begin(), visibility.data().end(),
                         [](const auto &v) { return v.has_value(); });
}

Grid2D<std::optional<double>> visibility_matrix(const Grid2D<double> &c_in, const Grid2D<double> &c_out,
                                                double relative_eps) {
    if (c_in.rows() != c_out.rows() || c_in.cols() != c_out.cols()) {
        throw std::invalid_argument("c_in and c_out shapes differ");
    }
    double peak = 0.0;
    for (double v : c_out.data()) {
        peak = std::max(peak, v);
    }
    double threshold = relative_eps * peak;
    Grid2D<std::optional<double>> vis(c_in.rows(), c_in.cols());
    for (std::size_t i = 0; i < c_in.rows(); i++) {
        for (std::size_t j = 0; j < c_in.cols(); j++) {
            double out = c_out(i, j);
            if (peak > 0 && out > threshold) {
                vis(i, j) = (out - c_in(i, j)) / out;
            }
        }
    }
    return vis;
}

CorrelationMap correlation_map(const ModeField &a, const ModeField &b, const AngularGrid &grid_c,
                               const AngularGrid &grid_d, const ProjectionPair &proj, const MapOptions &options) {
    proj.validate();
    const std::size_t nc = grid_c.size();
    const std::size_t nd = grid_d.size();
    const PortAnalyzer pc(proj.pc, options.basis);
    const PortAnalyzer pd(proj.pd, options.basis);
    auto envelope = shared_envelope(a, b);

    CorrelationMap map{grid_c, grid_d, Grid2D<double>(nc, nd), Grid2D<double>(nc, nd), {}};

    // Radial quadrature: a single node at the reference radius for unit envelopes.
    std::vector<double> radii{options.reference_radius};
    std::vector<double> weights{1.0};
    if (envelope && envelope->kind != RadialProfile::Kind::Unit) {
        if (options.radial_nodes < 1) {
            throw std::invalid_argument("radial_nodes must be positive");
        }
        double r_max = fluence_peak_radius(*envelope) + 4.0 * envelope->waist;
        double dr = r_max / options.radial_nodes;
        radii.clear();
        weights.clear();
        for (int k = 0; k < options.radial_nodes; k++) {
            double r = (k + 0.5) * dr;
            radii.push_back(r);
            weights.push_back(fluence(*envelope, r) * r * dr);
        }
    }
    const bool separable = a.azimuthal_only() && b.azimuthal_only();
    if (separable && radii.size() > 1) {
        // Fields do not depend on r: the radial integral factors out of every cell.
        double w_sum = 0.0;
        for (double w : weights) {
            w_sum += w;
        }
        radii = {options.reference_radius};
        weights = {w_sum};
    }

    auto sample = [](const ModeField &f, const std::vector<double> &rs, const AngularGrid &g) {
        Grid2D<JonesVector> s(rs.size(), g.size());
        for (std::size_t ri = 0; ri < rs.size(); ri++) {
            for (int k = 0; k < g.size(); k++) {
                s(ri, k) = f.eval(rs[ri], g.center(k));
            }
        }
        return s;
    };
    auto a_c = sample(a, radii, grid_c);
    auto b_c = sample(b, radii, grid_c);
    auto a_d = sample(a, radii, grid_d);
    auto b_d = sample(b, radii, grid_d);

    for (std::size_t i = 0; i < nc; i++) {
        for (std::size_t j = 0; j < nd; j++) {
            double cin = 0.0;
            double cout = 0.0;
            for (std::size_t ri = 0; ri < radii.size(); ri++) {
                for (std::size_t rj = 0; rj < radii.size(); rj++) {
                    Coincidences c = unscaled({a_c(ri, i), b_c(ri, i), a_d(rj, j), b_d(rj, j)}, pc, pd);
                    double w = weights[ri] * weights[rj];
                    cin += w * c.c_in;
                    cout += w * c.c_out;
                }
            }
            map.c_in(i, j) = cin;
            map.c_out(i, j) = cout;
        }
    }
    map.visibility = visibility_matrix(map.c_in, map.c_out);
    return map;
}

HeraldedDistribution heralded_distribution(const CorrelationMap &map, std::size_t herald_sector, Temporal temporal) {
    const auto &m = map.coincidences(temporal);
    if (herald_sector >= m.rows()) {
        throw std::out_of_range("herald sector out of range");
    }
    HeraldedDistribution d;
    d.weights.resize(m.cols());
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); j++) {
        d.weights[j] = m(herald_sector, j);
        sum += d.weights[j];
    }
    if (!(sum > 0)) {
        std::fill(d.weights.begin(), d.weights.end(), 0.0);
        d.empty = true;
        return d;
    }
    for (double &w : d.weights) {
        w /= sum;
    }
    return d;
}

BucketVisibility bucket_visibility(const CorrelationMap &map, Axis retained) {
    const bool keep_c = retained == Axis::C;
    const std::size_t n_keep = keep_c ? map.c_in.rows() : map.c_in.cols();
    const std::size_t n_sum = keep_c ? map.c_in.cols() : map.c_in.rows();
    const double width = keep_c ? map.grid_d.width() : map.grid_c.width();

    BucketVisibility b;
    b.ratio_of_integrals.resize(n_keep);
    b.integral_of_ratios.resize(n_keep);
    for (std::size_t k = 0; k < n_keep; k++) {
        double sum_in = 0.0;
        double sum_out = 0.0;
        double integral = 0.0;
        bool any = false;
        for (std::size_t s = 0; s < n_sum; s++) {
            std::size_t i = keep_c ? k : s;
            std::size_t j = keep_c ? s : k;
            const auto &v = map.visibility(i, j);
            if (!v) {
                continue;
            }
            any = true;
            sum_in += map.c_in(i, j);
            sum_out += map.c_out(i, j);
            integral += *v * width;
        }
        if (any && sum_out > 0) {
            b.ratio_of_integrals[k] = (sum_out - sum_in) / sum_out;
        }
        if (any) {
            b.integral_of_ratios[k] = integral;
        }
    }
    return b;
}

}  // namespace homcorr
