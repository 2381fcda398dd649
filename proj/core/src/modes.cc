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

#include "homcorr/modes.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "homcorr/errors.h"

namespace homcorr {

double fluence(const RadialProfile &profile, double r) {
    if (!(r >= 0)) {
        throw std::domain_error("fluence: radius must be non-negative");
    }
    switch (profile.kind) {
        case RadialProfile::Kind::Unit:
            return 1.0;
        case RadialProfile::Kind::Gaussian: {
            double w = profile.waist;
            return std::exp(-2.0 * r * r / (w * w));
        }
        case RadialProfile::Kind::LgRing: {
            double w = profile.waist;
            double u = 2.0 * r * r / (w * w);
            int l = profile.oam_abs;
            if (l == 0) {
                return std::exp(-u);
            }
            return std::pow(u / l, l) * std::exp(l - u);
        }
    }
    throw std::invalid_argument("unknown radial profile");
}

double fluence_peak_radius(const RadialProfile &profile) {
    if (profile.kind != RadialProfile::Kind::LgRing) {
        return 0.0;
    }
    return profile.waist * std::sqrt(profile.oam_abs / 2.0);
}

ModeField::ModeField(std::string label, Evaluator eval, bool azimuthal_only, std::optional<RadialProfile> envelope)
    : label_(std::move(label)),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      azimuthal_only_(azimuthal_only),
      envelope_(envelope) {
}

ModeField ModeField::with_envelope(RadialProfile envelope) const {
    ModeField r = *this;
    r.envelope_ = envelope;
    return r;
}

ModeField ModeField::with_global_phase(Complex phase) const {
    auto inner_eval = eval_;
    return ModeField(
        label_, [inner_eval, phase](double r, double phi) { return phase * (*inner_eval)(r, phi); }, azimuthal_only_,
        envelope_);
}

ModeField ModeField::relabeled(std::string label) const {
    ModeField r = *this;
    r.label_ = std::move(label);
    return r;
}

std::optional<NamedMode> parse_named_mode(std::string_view name) {
    if (name == "radial_vv") {
        return NamedMode::RadialVV;
    }
    if (name == "pi_vv") {
        return NamedMode::PiVV;
    }
    if (name == "oam_circular") {
        return NamedMode::OamCircular;
    }
    return std::nullopt;
}

std::string_view named_mode_name(NamedMode mode) {
    switch (mode) {
        case NamedMode::RadialVV:
            return "radial_vv";
        case NamedMode::PiVV:
            return "pi_vv";
        case NamedMode::OamCircular:
            return "oam_circular";
    }
    return "?";
}

ModeField make_named_mode(NamedMode mode, int l) {
    switch (mode) {
        case NamedMode::RadialVV:
            return ModeField("radial_vv", [](double, double phi) {
                return JonesVector{std::cos(phi), std::sin(phi)};
            });
        case NamedMode::PiVV:
            return ModeField("pi_vv", [](double, double phi) {
                return JonesVector{std::cos(phi), -std::sin(phi)};
            });
        case NamedMode::OamCircular: {
            const double s = 1.0 / std::sqrt(2.0);
            return ModeField("oam_circular(l=" + std::to_string(l) + ")", [l, s](double, double phi) {
                Complex w = std::polar(s, l * phi);
                return JonesVector{w, Complex(0.0, 1.0) * w};
            });
        }
    }
    throw ConfigError("unknown named mode");
}

ModeField make_named_mode(std::string_view name, int l) {
    auto mode = parse_named_mode(name);
    if (!mode) {
        throw ConfigError("unknown named mode '" + std::string(name) + "'");
    }
    return make_named_mode(*mode, l);
}

ModeField uniform_mode(const JonesVector &polarization, std::string label) {
    return ModeField(std::move(label), [polarization](double, double) { return polarization; });
}

OpticalElement OpticalElement::hwp(double angle) {
    return {Kind::Hwp, angle, 0.0, std::numbers::pi};
}

OpticalElement OpticalElement::qwp(double angle) {
    return {Kind::Qwp, angle, 0.0, std::numbers::pi / 2};
}

OpticalElement OpticalElement::polarizer(double angle) {
    return {Kind::Polarizer, angle, 0.0, 0.0};
}

OpticalElement OpticalElement::qplate(double q, double delta, double angle) {
    return {Kind::QPlate, angle, q, delta};
}

static JonesMatrix retarder(double delta, double alpha) {
    const Complex pre = std::polar(1.0, delta / 2);
    const double c = std::cos(delta / 2);
    const Complex s = Complex(0.0, -std::sin(delta / 2));
    const double c2 = std::cos(2 * alpha);
    const double s2 = std::sin(2 * alpha);
    JonesMatrix m;
    m.m[0][0] = pre * (c + s * c2);
    m.m[0][1] = pre * (s * s2);
    m.m[1][0] = pre * (s * s2);
    m.m[1][1] = pre * (c - s * c2);
    return m;
}

JonesMatrix OpticalElement::matrix_at(double phi) const {
    switch (kind) {
        case Kind::Hwp:
            return retarder(std::numbers::pi, angle);
        case Kind::Qwp:
            return retarder(std::numbers::pi / 2, angle);
        case Kind::QPlate:
            return retarder(delta, q * phi + angle);
        case Kind::Polarizer: {
            double c = std::cos(angle);
            double s = std::sin(angle);
            JonesMatrix m;
            m.m[0][0] = c * c;
            m.m[0][1] = c * s;
            m.m[1][0] = c * s;
            m.m[1][1] = s * s;
            return m;
        }
    }
    throw std::invalid_argument("unknown optical element");
}

std::string OpticalElement::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Hwp:
            out << "hwp(" << angle << ")";
            break;
        case Kind::Qwp:
            out << "qwp(" << angle << ")";
            break;
        case Kind::Polarizer:
            out << "polarizer(" << angle << ")";
            break;
        case Kind::QPlate:
            out << "qplate(q=" << q << ",delta=" << delta << ",angle=" << angle << ")";
            break;
    }
    return out.str();
}

std::optional<OpticalElement::Kind> parse_element_kind(std::string_view name) {
    if (name == "hwp") {
        return OpticalElement::Kind::Hwp;
    }
    if (name == "qwp") {
        return OpticalElement::Kind::Qwp;
    }
    if (name == "polarizer") {
        return OpticalElement::Kind::Polarizer;
    }
    if (name == "qplate") {
        return OpticalElement::Kind::QPlate;
    }
    return std::nullopt;
}

ModeField apply_element(const ModeField &field, const OpticalElement &element) {
    ModeField source = field;
    ModeField out(
        field.label() + "|" + element.describe(),
        [source, element](double r, double phi) { return element.matrix_at(phi) * source.eval(r, phi); },
        field.azimuthal_only(), field.radial_envelope());
    return out;
}

ModeField prepare_mode(const Preparation &preparation, std::string label) {
    ModeField field = uniform_mode(preparation.input);
    for (const auto &e : preparation.elements) {
        field = apply_element(field, e);
    }
    if (!label.empty()) {
        field = field.relabeled(std::move(label));
    }
    return field;
}

Preparation standard_preparation(NamedMode mode, int l) {
    const JonesVector h = standard_state(StandardState::H);
    switch (mode) {
        case NamedMode::RadialVV:
            return {h, {OpticalElement::qplate(0.5)}};
        case NamedMode::PiVV:
            return {h, {OpticalElement::qplate(0.5), OpticalElement::hwp(0.0)}};
        case NamedMode::OamCircular:
            return {h,
                    {OpticalElement::qwp(-std::numbers::pi / 4), OpticalElement::qplate(l / 2.0),
                     OpticalElement::hwp(0.0)}};
    }
    throw ConfigError("unknown named mode");
}

PhaseAlignedDifference compare_up_to_global_phase(const ModeField &a, const ModeField &b,
                                                  std::span<const double> phis, double r) {
    Complex overlap = 0.0;
    for (double phi : phis) {
        overlap += inner(b.eval(r, phi), a.eval(r, phi));
    }
    Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
    double worst = 0.0;
    for (double phi : phis) {
        JonesVector d = a.eval(r, phi) - phase * b.eval(r, phi);
        worst = std::max(worst, std::sqrt(d.norm2()));
    }
    return {phase, worst};
}

}  // namespace homcorr
