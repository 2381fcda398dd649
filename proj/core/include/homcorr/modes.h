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

#ifndef HOMCORR_MODES_H
#define HOMCORR_MODES_H

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homcorr/jones.h"

namespace homcorr {

/// Radial amplitude profile at the detection plane. Only its fluence enters
/// the coincidence rates, and it cancels in visibilities when both photons
/// share it.
struct RadialProfile {
    enum class Kind { Unit, Gaussian, LgRing };

    Kind kind = Kind::Unit;
    double waist = 1.0;
    int oam_abs = 0;

    static RadialProfile unit() {
        return {};
    }
    static RadialProfile gaussian(double waist) {
        return {Kind::Gaussian, waist, 0};
    }
    static RadialProfile lg_ring(double waist, int oam_abs) {
        return {Kind::LgRing, waist, oam_abs};
    }

    bool operator==(const RadialProfile &) const = default;
};

/// Time-integrated squared radial profile, normalized to a peak value of 1.
///
/// unit: 1. gaussian: exp(-2r^2/w^2). lg_ring with |l|: (2r^2/(|l| w^2))^|l| exp(|l| - 2r^2/w^2),
/// which peaks at r = w sqrt(|l|/2) and vanishes on axis for |l| > 0.
/// Throws std::domain_error for r < 0.
double fluence(const RadialProfile &profile, double r);

/// Radius at which the fluence is maximal (0 for unit and gaussian profiles).
double fluence_peak_radius(const RadialProfile &profile);

/// Spatially varying unit polarization field e(r, phi) of one photon.
///
/// Immutable and cheap to copy; the evaluator is shared. Fields flagged
/// azimuthal_only promise that eval(r, phi) does not depend on r.
class ModeField {
   public:
    using Evaluator = std::function<JonesVector(double r, double phi)>;

    ModeField(std::string label, Evaluator eval, bool azimuthal_only = true,
              std::optional<RadialProfile> envelope = std::nullopt);

    JonesVector eval(double r, double phi) const {
        return (*eval_)(r, phi);
    }
    const std::string &label() const {
        return label_;
    }
    bool azimuthal_only() const {
        return azimuthal_only_;
    }
    const std::optional<RadialProfile> &radial_envelope() const {
        return envelope_;
    }

    ModeField with_envelope(RadialProfile envelope) const;
    ModeField with_global_phase(Complex phase) const;
    ModeField relabeled(std::string label) const;

   private:
    std::string label_;
    std::shared_ptr<const Evaluator> eval_;
    bool azimuthal_only_;
    std::optional<RadialProfile> envelope_;
};

enum class NamedMode { RadialVV, PiVV, OamCircular };

std::optional<NamedMode> parse_named_mode(std::string_view name);
std::string_view named_mode_name(NamedMode mode);

/// Closed-form fields:
///   radial_vv    (cos phi, sin phi)
///   pi_vv        (cos phi, -sin phi)
///   oam_circular (1, i) e^{i l phi} / sqrt2
/// l is ignored except for oam_circular.
ModeField make_named_mode(NamedMode mode, int l = 1);
/// Same, by name. Throws ConfigError for unknown names.
ModeField make_named_mode(std::string_view name, int l = 1);

ModeField uniform_mode(const JonesVector &polarization, std::string label = "uniform");

struct OpticalElement {
    enum class Kind { Hwp, Qwp, Polarizer, QPlate };

    Kind kind = Kind::Hwp;
    /// Fast axis (retarders, q-plate offset) or transmission axis (polarizer), radians from H.
    double angle = 0.0;
    /// Topological charge, q-plate only.
    double q = 0.0;
    /// Retardance, q-plate only.
    double delta = 3.14159265358979323846;

    static OpticalElement hwp(double angle);
    static OpticalElement qwp(double angle);
    static OpticalElement polarizer(double angle);
    static OpticalElement qplate(double q, double delta = 3.14159265358979323846, double angle = 0.0);

    /// Jones matrix at azimuth phi.
    ///
    /// Retarders use e^{i delta/2} (cos(delta/2) 1 - i sin(delta/2) S(alpha)) with
    /// S(alpha) = [[cos 2alpha, sin 2alpha], [sin 2alpha, -cos 2alpha]], so a half-wave
    /// retarder is exactly S(alpha) and zero retardance is exactly the identity.
    /// For the q-plate alpha = q phi + angle; at delta = pi it sends
    /// L -> R e^{+i 2q phi} and R -> L e^{-i 2q phi}, and uniform H -> (cos 2q phi, sin 2q phi).
    JonesMatrix matrix_at(double phi) const;
    bool is_unitary() const {
        return kind != Kind::Polarizer;
    }
    std::string describe() const;
};

std::optional<OpticalElement::Kind> parse_element_kind(std::string_view name);

/// Pointwise Jones-matrix multiplication. A polarizer output is not renormalized.
ModeField apply_element(const ModeField &field, const OpticalElement &element);

/// Uniform input polarization followed by an ordered element list.
struct Preparation {
    JonesVector input;
    std::vector<OpticalElement> elements;
};

ModeField prepare_mode(const Preparation &preparation, std::string label = "");

/// Element pipelines that reproduce the closed-form named modes:
///   radial_vv    H -> q-plate(q=1/2)
///   pi_vv        H -> q-plate(q=1/2) -> HWP(0)
///   oam_circular H -> QWP(-pi/4) -> q-plate(q=l/2) -> HWP(0)
/// The QWP step turns H into L up to a global phase of e^{i pi/4}.
Preparation standard_preparation(NamedMode mode, int l = 1);

struct PhaseAlignedDifference {
    /// Unit phase p such that p * b best matches a in least squares.
    Complex phase;
    double max_abs_diff;
};

/// Compares two fields up to one global complex phase on the given azimuths.
PhaseAlignedDifference compare_up_to_global_phase(const ModeField &a, const ModeField &b,
                                                  std::span<const double> phis, double r = 1.0);

}  // namespace homcorr

#endif
