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

#include "homcorr/fock_oracle.h"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "homcorr/errors.h"

namespace homcorr {

void TwoPhotonState::add(const ModeIndex &x, const ModeIndex &y, Complex amplitude) {
    amplitudes_[key(x, y)] += amplitude;
}

Complex TwoPhotonState::amplitude(const ModeIndex &x, const ModeIndex &y) const {
    auto it = amplitudes_.find(key(x, y));
    return it == amplitudes_.end() ? Complex(0.0) : it->second;
}

double TwoPhotonState::norm2() const {
    double s = 0.0;
    for (const auto &[k, a] : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

TwoPhotonState apply_linear_map(const TwoPhotonState &state, const LinearModeMap &map) {
    const double sqrt2 = std::sqrt(2.0);
    TwoPhotonState out;
    for (const auto &[k, amp] : state.amplitudes()) {
        const auto &[x, y] = k;
        // |2_x> = (a_x+)^2 |0> / sqrt2; |1_x 1_y> = a_x+ a_y+ |0>.
        Complex op_coef = x == y ? amp / sqrt2 : amp;
        auto images_x = map(x);
        auto images_y = map(y);
        for (const auto &[mx, ux] : images_x) {
            for (const auto &[my, uy] : images_y) {
                Complex c = op_coef * ux * uy;
                // (b_m+)^2 |0> = sqrt2 |2_m>.
                out.add(mx, my, mx == my ? c * sqrt2 : c);
            }
        }
    }
    return out;
}

TwoPhotonState prepare_input(const ModeField &a, const ModeField &b, const AngularGrid &grid, Temporal temporal,
                             double radius) {
    const int n = grid.size();
    auto photon = [&](const ModeField &f, Path path, int tbin) {
        std::vector<std::pair<ModeIndex, Complex>> amps;
        double norm2 = 0.0;
        for (int k = 0; k < n; k++) {
            JonesVector e = f.eval(radius, grid.center(k));
            if (!e.is_finite()) {
                throw ConfigError("mode '" + f.label() + "' is not finite at a sector center");
            }
            amps.push_back({{path, k, Pol::H, tbin}, e.h});
            amps.push_back({{path, k, Pol::V, tbin}, e.v});
            norm2 += e.norm2();
        }
        if (!(norm2 > 0)) {
            throw ConfigError("mode '" + f.label() + "' has zero norm on the sector grid");
        }
        double s = 1.0 / std::sqrt(norm2);
        for (auto &p : amps) {
            p.second *= s;
        }
        return amps;
    };
    auto photon_a = photon(a, Path::A, 0);
    auto photon_b = photon(b, Path::B, temporal == Temporal::In ? 0 : 1);

    TwoPhotonState state;
    for (const auto &[ma, ca] : photon_a) {
        if (ca == Complex(0.0)) {
            continue;
        }
        for (const auto &[mb, cb] : photon_b) {
            if (cb == Complex(0.0)) {
                continue;
            }
            state.add(ma, mb, ca * cb);
        }
    }
    return state;
}

TwoPhotonState apply_beamsplitter(const TwoPhotonState &state) {
    const double s = 1.0 / std::sqrt(2.0);
    return apply_linear_map(state, [s](const ModeIndex &m) {
        ModeIndex c = m;
        ModeIndex d = m;
        c.path = Path::C;
        d.path = Path::D;
        switch (m.path) {
            case Path::A:
                return std::vector<std::pair<ModeIndex, Complex>>{{c, s}, {d, s}};
            case Path::B:
                return std::vector<std::pair<ModeIndex, Complex>>{{c, s}, {d, -s}};
            default:
                throw std::invalid_argument("beam splitter input must be on paths A and B");
        }
    });
}

PostSelection postselect_and_probabilities(const TwoPhotonState &state, int sectors, const ProjectionPair &proj) {
    proj.validate();
    PostSelection result{Grid2D<double>(sectors, sectors), 0.0};
    auto weight = [](const std::optional<JonesVector> &u, Pol p) -> Complex {
        if (!u) {
            return 1.0;
        }
        return std::conj(p == Pol::H ? u->h : u->v);
    };
    const bool projected = !proj.empty();
    // Projected amplitudes, keyed by (sector C, sector D, tbin C, tbin D, pol C if unprojected, pol D if unprojected).
    std::map<std::tuple<int, int, int, int, int, int>, Complex> coherent;

    for (const auto &[k, amp] : state.amplitudes()) {
        ModeIndex x = k.first;
        ModeIndex y = k.second;
        if (x.path != Path::C && x.path != Path::D) {
            throw std::invalid_argument("post-selection expects photons on output paths C and D");
        }
        if (y.path != Path::C && y.path != Path::D) {
            throw std::invalid_argument("post-selection expects photons on output paths C and D");
        }
        if (x.path == y.path) {
            result.bunched += std::norm(amp);
            continue;
        }
        if (x.path == Path::D) {
            std::swap(x, y);
        }
        if (x.sector >= sectors || y.sector >= sectors) {
            throw std::invalid_argument("sector index outside the post-selection grid");
        }
        if (!projected) {
            result.probabilities(x.sector, y.sector) += std::norm(amp);
            continue;
        }
        int pol_c = proj.pc ? -1 : static_cast<int>(x.pol);
        int pol_d = proj.pd ? -1 : static_cast<int>(y.pol);
        coherent[{x.sector, y.sector, x.tbin, y.tbin, pol_c, pol_d}] +=
            weight(proj.pc, x.pol) * weight(proj.pd, y.pol) * amp;
    }
    for (const auto &[k, amp] : coherent) {
        result.probabilities(std::get<0>(k), std::get<1>(k)) += std::norm(amp);
    }
    return result;
}

CorrelationMap oracle_correlation_map(const ModeField &a, const ModeField &b, const AngularGrid &grid,
                                      const ProjectionPair &proj, double radius) {
    const int n = grid.size();
    auto run = [&](Temporal t) {
        TwoPhotonState out = apply_beamsplitter(prepare_input(a, b, grid, t, radius));
        Grid2D<double> p = postselect_and_probabilities(out, n, proj).probabilities;
        for (double &v : p.data()) {
            v *= static_cast<double>(n) * n;
        }
        return p;
    };
    CorrelationMap map{grid, grid, run(Temporal::In), run(Temporal::Out), {}};
    map.visibility = visibility_matrix(map.c_in, map.c_out);
    return map;
}

}  // namespace homcorr
