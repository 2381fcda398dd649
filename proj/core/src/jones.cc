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

#include "homcorr/jones.h"

#include <cmath>
#include <stdexcept>

namespace homcorr {

bool JonesVector::is_finite() const {
    return std::isfinite(h.real()) && std::isfinite(h.imag()) && std::isfinite(v.real()) &&
           std::isfinite(v.imag());
}

bool JonesVector::is_unit(double tol) const {
    return is_finite() && std::abs(norm2() - 1.0) <= tol;
}

JonesVector JonesVector::normalized() const {
    double n = std::sqrt(norm2());
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite Jones vector");
    }
    return {h / n, v / n};
}

JonesVector standard_state(StandardState s) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (s) {
        case StandardState::H:
            return {1.0, 0.0};
        case StandardState::V:
            return {0.0, 1.0};
        case StandardState::D:
            return {r, r};
        case StandardState::A:
            return {r, -r};
        case StandardState::L:
            return {r, Complex(0.0, r)};
        case StandardState::R:
            return {r, Complex(0.0, -r)};
    }
    throw std::invalid_argument("unknown standard state");
}

std::optional<StandardState> parse_standard_state(std::string_view name) {
    if (name.size() != 1) {
        return std::nullopt;
    }
    switch (name[0]) {
        case 'H':
            return StandardState::H;
        case 'V':
            return StandardState::V;
        case 'D':
            return StandardState::D;
        case 'A':
            return StandardState::A;
        case 'L':
            return StandardState::L;
        case 'R':
            return StandardState::R;
        default:
            return std::nullopt;
    }
}

std::string_view standard_state_name(StandardState s) {
    static constexpr std::string_view names[] = {"H", "V", "D", "A", "L", "R"};
    return names[static_cast<int>(s)];
}

bool PolarizationBasis::is_orthonormal(double tol) const {
    return u1.is_unit(tol) && u2.is_unit(tol) && std::abs(inner(u1, u2)) <= tol;
}

PolarizationBasis PolarizationBasis::make(const JonesVector &u1, const JonesVector &u2, double tol) {
    PolarizationBasis b{u1, u2};
    if (!b.is_orthonormal(tol)) {
        throw std::invalid_argument("polarization basis is not orthonormal");
    }
    return b;
}

PolarizationBasis hv_basis() {
    return {standard_state(StandardState::H), standard_state(StandardState::V)};
}

PolarizationBasis lr_basis() {
    return {standard_state(StandardState::L), standard_state(StandardState::R)};
}

PolarizationBasis da_basis() {
    return {standard_state(StandardState::D), standard_state(StandardState::A)};
}

JonesMatrix JonesMatrix::identity() {
    JonesMatrix r;
    r.m[0][0] = 1.0;
    r.m[1][1] = 1.0;
    return r;
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix &o) const {
    JonesMatrix r;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        }
    }
    return r;
}

}  // namespace homcorr
