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

#ifndef HOMCORR_FOCK_ORACLE_H
#define HOMCORR_FOCK_ORACLE_H

// Brute-force two-photon Fock-space model of the beam-splitter experiment.
//
// Each photon lives on discrete modes (path, angular sector, polarization,
// time bin). The input product state is built from sampled mode fields, the
// beam splitter is applied by substituting creation operators, and joint
// detection probabilities are read off the post-selected amplitudes. Nothing
// here uses the closed-form coincidence expressions of correlation.h.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "homcorr/correlation.h"
#include "homcorr/grid.h"
#include "homcorr/jones.h"
#include "homcorr/modes.h"

namespace homcorr {

enum class Path { A, B, C, D };
enum class Pol { H, V };

struct ModeIndex {
    Path path = Path::A;
    int sector = 0;
    Pol pol = Pol::H;
    int tbin = 0;

    auto operator<=>(const ModeIndex &) const = default;
};

/// Symmetric two-photon state in the occupation-number basis.
///
/// Key (i, j) with i <= j is the normalized Fock state |1_i 1_j> for i != j
/// and |2_i> for i == j. Amplitudes are the coefficients on those states, so
/// the state norm is the plain sum of |amplitude|^2.
class TwoPhotonState {
   public:
    using Key = std::pair<ModeIndex, ModeIndex>;

    static Key key(const ModeIndex &x, const ModeIndex &y) {
        return x <= y ? Key{x, y} : Key{y, x};
    }

    void add(const ModeIndex &x, const ModeIndex &y, Complex amplitude);
    Complex amplitude(const ModeIndex &x, const ModeIndex &y) const;
    double norm2() const;
    std::size_t size() const {
        return amplitudes_.size();
    }
    const std::map<Key, Complex> &amplitudes() const {
        return amplitudes_;
    }

   private:
    std::map<Key, Complex> amplitudes_;
};

/// Single-photon mode transformation: creation operator of `from` -> sum of weighted creation operators.
using LinearModeMap = std::function<std::vector<std::pair<ModeIndex, Complex>>(const ModeIndex &from)>;

/// Substitutes every creation operator through `map` and regroups into Fock states.
TwoPhotonState apply_linear_map(const TwoPhotonState &state, const LinearModeMap &map);

/// Photon A on path A in time bin 0, photon B on path B in time bin 0 (in) or 1 (out).
/// Each photon's amplitude on (sector k, pol) is its field sampled at the sector
/// center, normalized over all sectors. Throws ConfigError for a zero-norm sample.
TwoPhotonState prepare_input(const ModeField &a, const ModeField &b, const AngularGrid &grid, Temporal temporal,
                             double radius = 1.0);

/// 50:50 beam splitter a+ -> (c+ + d+)/sqrt2, b+ -> (c+ - d+)/sqrt2, labels preserved.
/// Throws std::invalid_argument if the state has photons outside paths A and B.
TwoPhotonState apply_beamsplitter(const TwoPhotonState &state);

struct PostSelection {
    /// Joint probability of one photon in port-C sector i and one in port-D sector j.
    Grid2D<double> probabilities;
    /// Probability that both photons left through the same port.
    double bunched = 0.0;
};

/// Keeps exactly one photon in C and one in D. Without a polarizer the
/// detector sums polarizations incoherently; with one the amplitudes are
/// projected first. Time bins are always summed incoherently.
PostSelection postselect_and_probabilities(const TwoPhotonState &state, int sectors,
                                           const ProjectionPair &proj = {});

/// Runs the in and out configurations and assembles a map on the engine's
/// normalization (probabilities scaled by n^2, one sector per field sample).
CorrelationMap oracle_correlation_map(const ModeField &a, const ModeField &b, const AngularGrid &grid,
                                      const ProjectionPair &proj = {}, double radius = 1.0);

}  // namespace homcorr

#endif
