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

#ifndef HOMCORR_JONES_H
#define HOMCORR_JONES_H

#include <array>
#include <complex>
#include <optional>
#include <string_view>

namespace homcorr {

using Complex = std::complex<double>;

/// Transverse polarization amplitude at a point, in the {H, V} basis.
struct JonesVector {
    Complex h;
    Complex v;

    double norm2() const {
        return std::norm(h) + std::norm(v);
    }
    bool is_finite() const;
    bool is_unit(double tol = 1e-12) const;
    JonesVector normalized() const;

    JonesVector operator+(const JonesVector &other) const {
        return {h + other.h, v + other.v};
    }
    JonesVector operator-(const JonesVector &other) const {
        return {h - other.h, v - other.v};
    }
    bool operator==(const JonesVector &other) const = default;
};

inline JonesVector operator*(Complex s, const JonesVector &a) {
    return {s * a.h, s * a.v};
}

/// Sesquilinear inner product <a, b> = conj(a) . b.
///
/// The conjugate always falls on the first argument, so a projection of a
/// field e onto a detector polarization u is written inner(u, e). Detection
/// probabilities only ever use |inner(u, e)|^2, which is independent of this
/// choice.
inline Complex inner(const JonesVector &a, const JonesVector &b) {
    return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

enum class StandardState { H, V, D, A, L, R };

/// H=(1,0), V=(0,1), D=(1,1)/sqrt2, A=(1,-1)/sqrt2, L=(1,i)/sqrt2, R=(1,-i)/sqrt2.
///
/// L carries the +i on the V component, the same handedness as the
/// circularly polarized OAM mode built by make_named_mode.
JonesVector standard_state(StandardState s);
std::optional<StandardState> parse_standard_state(std::string_view name);
std::string_view standard_state_name(StandardState s);

/// Orthonormal pair of polarization vectors.
struct PolarizationBasis {
    JonesVector u1;
    JonesVector u2;

    /// Throws std::invalid_argument unless the pair is orthonormal within tol.
    static PolarizationBasis make(const JonesVector &u1, const JonesVector &u2, double tol = 1e-12);
    bool is_orthonormal(double tol = 1e-12) const;
    std::array<JonesVector, 2> vectors() const {
        return {u1, u2};
    }
};

PolarizationBasis hv_basis();
PolarizationBasis lr_basis();
PolarizationBasis da_basis();

/// 2x2 complex matrix acting on JonesVectors; m[row][col].
struct JonesMatrix {
    std::array<std::array<Complex, 2>, 2> m{};

    static JonesMatrix identity();
    JonesVector operator*(const JonesVector &x) const {
        return {m[0][0] * x.h + m[0][1] * x.v, m[1][0] * x.h + m[1][1] * x.v};
    }
    JonesMatrix operator*(const JonesMatrix &o) const;
};

}  // namespace homcorr

#endif
