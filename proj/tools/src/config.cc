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

#include "homcorr_cli/config.h"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "homcorr/errors.h"
#include "homcorr/map_io.h"

namespace homcorr::cli {

namespace {

using nlohmann::json;

/// Object reader that remembers which keys were consumed so leftovers can be rejected.
class Section {
   public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail("expected an object");
        }
    }

    [[noreturn]] void fail(const std::string &why) const {
        throw ConfigError("config " + (path_.empty() ? std::string("<root>") : path_) + ": " + why);
    }

    std::string child_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    const json *find(std::string_view key) {
        seen_.insert(std::string(key));
        auto it = j_.find(std::string(key));
        return it == j_.end() ? nullptr : &*it;
    }

    bool has(std::string_view key) const {
        return j_.contains(std::string(key));
    }

    template <typename T>
    void read(std::string_view key, T &out) {
        const json *v = find(key);
        if (!v) {
            return;
        }
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v->is_boolean()) {
                    throw ConfigError("expected true or false");
                }
                out = v->get<bool>();
            } else if constexpr (std::is_integral_v<T>) {
                if (!v->is_number_integer()) {
                    throw ConfigError("expected an integer");
                }
                if constexpr (std::is_unsigned_v<T>) {
                    if (v->is_number_unsigned()) {
                        out = v->get<T>();
                    } else {
                        throw ConfigError("expected a non-negative integer");
                    }
                } else {
                    auto x = v->get<long long>();
                    if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
                        throw ConfigError("integer out of range");
                    }
                    out = static_cast<T>(x);
                }
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v->is_number()) {
                    throw ConfigError("expected a number");
                }
                out = v->get<double>();
            } else {
                if (!v->is_string()) {
                    throw ConfigError("expected a string");
                }
                out = v->get<std::string>();
            }
        } catch (const ConfigError &e) {
            throw ConfigError("config " + child_path(key) + ": " + e.what());
        }
    }

    void finish() const {
        for (const auto &[k, v] : j_.items()) {
            if (!seen_.count(k)) {
                fail("unknown key '" + k + "'");
            }
        }
    }

   private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

JonesVector parse_jones(const json &j, const std::string &path) {
    if (j.is_string()) {
        auto s = parse_standard_state(j.get<std::string>());
        if (!s) {
            throw ConfigError("config " + path + ": unknown polarization '" + j.get<std::string>() +
                              "' (use H, V, D, A, L, R or {\"h\": [re, im], \"v\": [re, im]})");
        }
        return standard_state(*s);
    }
    Section s(j, path);
    auto component = [&](std::string_view key) {
        const json *c = s.find(key);
        if (!c || !c->is_array() || c->size() != 2 || !(*c)[0].is_number() || !(*c)[1].is_number()) {
            s.fail(std::string("'") + std::string(key) + "' must be [re, im]");
        }
        return Complex((*c)[0].get<double>(), (*c)[1].get<double>());
    };
    JonesVector v{component("h"), component("v")};
    s.finish();
    if (!v.is_unit()) {
        s.fail("polarization vector must have unit norm");
    }
    return v;
}

std::optional<JonesVector> parse_polarizer(const json *j, const std::string &path) {
    if (!j || j->is_null()) {
        return std::nullopt;
    }
    return parse_jones(*j, path);
}

OpticalElement parse_element(const json &j, const std::string &path) {
    Section s(j, path);
    std::string kind_name;
    s.read("kind", kind_name);
    auto kind = parse_element_kind(kind_name);
    if (!kind) {
        s.fail("element kind must be hwp, qwp, polarizer or qplate");
    }
    double angle = 0.0;
    s.read("angle", angle);
    OpticalElement e;
    switch (*kind) {
        case OpticalElement::Kind::Hwp:
            e = OpticalElement::hwp(angle);
            break;
        case OpticalElement::Kind::Qwp:
            e = OpticalElement::qwp(angle);
            break;
        case OpticalElement::Kind::Polarizer:
            e = OpticalElement::polarizer(angle);
            break;
        case OpticalElement::Kind::QPlate: {
            double q = 0.5;
            double delta = OpticalElement{}.delta;
            s.read("q", q);
            s.read("delta", delta);
            e = OpticalElement::qplate(q, delta, angle);
            break;
        }
    }
    s.finish();
    return e;
}

ModeSpec parse_mode(const json &j, const std::string &path) {
    Section s(j, path);
    ModeSpec m;
    const bool named = s.has("named");
    const bool pipeline = s.has("pipeline");
    if (named == pipeline) {
        s.fail("give exactly one of 'named' or 'pipeline'");
    }
    if (named) {
        std::string name;
        s.read("named", name);
        m.named = parse_named_mode(name);
        if (!m.named) {
            s.fail("unknown named mode '" + name + "' (radial_vv, pi_vv, oam_circular)");
        }
        s.read("l", m.l);
    } else {
        Section p(*s.find("pipeline"), s.child_path("pipeline"));
        Preparation prep{standard_state(StandardState::H), {}};
        if (const json *in = p.find("input")) {
            prep.input = parse_jones(*in, p.child_path("input"));
        }
        if (const json *els = p.find("elements")) {
            if (!els->is_array()) {
                p.fail("'elements' must be a list");
            }
            for (std::size_t k = 0; k < els->size(); k++) {
                prep.elements.push_back(parse_element((*els)[k], p.child_path("elements") + "[" +
                                                                     std::to_string(k) + "]"));
            }
        }
        p.finish();
        m.pipeline = prep;
    }
    s.finish();
    return m;
}

RadialConfig parse_radial(const json &j, const std::string &path) {
    Section s(j, path);
    RadialConfig r;
    std::string kind = "unit";
    s.read("kind", kind);
    double waist = 1.0;
    int oam_abs = 1;
    s.read("waist", waist);
    s.read("oam_abs", oam_abs);
    s.read("nodes", r.nodes);
    s.finish();
    if (kind == "unit") {
        r.profile = RadialProfile::unit();
    } else if (kind == "gaussian") {
        r.profile = RadialProfile::gaussian(waist);
    } else if (kind == "lg_ring") {
        r.profile = RadialProfile::lg_ring(waist, oam_abs);
    } else {
        s.fail("kind must be unit, gaussian or lg_ring");
    }
    if (!(waist > 0) || oam_abs < 0 || r.nodes < 1) {
        s.fail("waist must be positive, oam_abs non-negative and nodes at least 1");
    }
    return r;
}

void parse_sim(const json &j, SimConfig &sim) {
    Section s(j, "sim");
    s.read("pairs", sim.pairs);
    s.read("coincidence_window_ns", sim.coincidence_window_ns);
    s.read("psf_sigma_px", sim.psf_sigma_px);
    s.read("sensor_width_px", sim.sensor_width_px);
    s.read("sensor_height_px", sim.sensor_height_px);
    s.read("ring_radius_px", sim.ring_radius_px);
    s.read("ring_width_px", sim.ring_width_px);
    s.read("seed", sim.seed);
    s.read("pair_interval_ns", sim.pair_interval_ns);
    s.read("timing_jitter_ns", sim.timing_jitter_ns);
    s.read("mean_pixels_per_hit", sim.mean_pixels_per_hit);
    s.read("pixel_time_spread_ns", sim.pixel_time_spread_ns);
    s.read("accidental_rate", sim.accidental_rate);
    s.finish();
    sim.validate();
}

void parse_analysis(const json &j, AnalysisConfig &a) {
    Section s(j, "analysis");
    s.read("max_gap_px", a.max_gap_px);
    s.read("max_gap_ns", a.max_gap_ns);
    s.read("min_out_count", a.min_out_count);
    s.read("min_radius_px", a.geometry.min_radius_px);
    if (const json *m = s.find("max_radius_px"); m && !m->is_null()) {
        if (!m->is_number()) {
            s.fail("max_radius_px must be a number or null");
        }
        a.geometry.max_radius_px = m->get<double>();
    }
    s.finish();
    if (!(a.max_gap_px > 0) || !(a.max_gap_ns > 0) || !(a.min_out_count > 0)) {
        s.fail("max_gap_px, max_gap_ns and min_out_count must be positive");
    }
    if (!(a.geometry.min_radius_px >= 0) || !(a.geometry.max_radius_px > a.geometry.min_radius_px)) {
        s.fail("need 0 <= min_radius_px < max_radius_px");
    }
}

}  // namespace

ModeField ModeSpec::build(const std::optional<RadialProfile> &envelope) const {
    ModeField f = named ? make_named_mode(*named, l) : prepare_mode(*pipeline, "pipeline");
    return envelope ? f.with_envelope(*envelope) : f;
}

nlohmann::json ModeSpec::to_json() const {
    if (named) {
        json j = {{"named", named_mode_name(*named)}};
        if (*named == NamedMode::OamCircular) {
            j["l"] = l;
        }
        return j;
    }
    json els = json::array();
    for (const auto &e : pipeline->elements) {
        els.push_back(e.describe());
    }
    return {{"pipeline", {{"input", jones_to_json(pipeline->input)}, {"elements", els}}}};
}

std::optional<RadialProfile> ExperimentConfig::envelope() const {
    if (radial.profile.kind == RadialProfile::Kind::Unit) {
        return std::nullopt;
    }
    return radial.profile;
}

MapOptions ExperimentConfig::map_options() const {
    MapOptions o;
    o.radial_nodes = radial.nodes;
    return o;
}

AnalysisConfig ExperimentConfig::analysis_for_sim() const {
    AnalysisConfig a = analysis;
    a.coincidence_window_ns = sim.coincidence_window_ns;
    a.geometry.center_x = sim.center_x();
    a.geometry.center_y = sim.center_y();
    return a;
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    Section s(root, "");
    if (const json *m = s.find("mode_a")) {
        cfg.mode_a = parse_mode(*m, "mode_a");
    }
    if (const json *m = s.find("mode_b")) {
        cfg.mode_b = parse_mode(*m, "mode_b");
    }
    if (const json *p = s.find("projection"); p && !p->is_null()) {
        Section ps(*p, "projection");
        cfg.projection.pc = parse_polarizer(ps.find("pc"), "projection.pc");
        cfg.projection.pd = parse_polarizer(ps.find("pd"), "projection.pd");
        ps.finish();
    }
    s.read("grid_n", cfg.grid_n);
    if (cfg.grid_n < 2) {
        s.fail("grid_n must be at least 2");
    }
    std::string temporal = "both";
    s.read("temporal", temporal);
    if (temporal == "in") {
        cfg.temporal = TemporalSelection::In;
    } else if (temporal == "out") {
        cfg.temporal = TemporalSelection::Out;
    } else if (temporal == "both") {
        cfg.temporal = TemporalSelection::Both;
    } else {
        s.fail("temporal must be in, out or both");
    }
    if (const json *r = s.find("radial_profile")) {
        cfg.radial = parse_radial(*r, "radial_profile");
    }
    s.read("render_pgm", cfg.render_pgm);
    if (const json *sim = s.find("sim")) {
        parse_sim(*sim, cfg.sim);
    }
    if (const json *a = s.find("analysis")) {
        parse_analysis(*a, cfg.analysis);
    }
    std::string out = cfg.output_dir.string();
    s.read("output_dir", out);
    if (out.empty()) {
        s.fail("output_dir must not be empty");
    }
    cfg.output_dir = out;
    s.finish();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::string default_config_text() {
    return R"(// homcorr experiment configuration (JSON; // and /* */ comments allowed).
// Unknown keys are rejected at every level. Angles are in radians.
{
  // Photon modes. Either a closed form:
  //   {"named": "radial_vv" | "pi_vv" | "oam_circular", "l": 1}
  // or an element pipeline applied to a uniform input polarization:
  //   {"pipeline": {"input": "H", "elements": [
  //       {"kind": "qplate", "q": 0.5, "delta": 3.141592653589793, "angle": 0},
  //       {"kind": "hwp", "angle": 0}]}}
  // Element kinds: hwp, qwp, polarizer (key: angle) and qplate (q, delta, angle).
  "mode_a": {"named": "radial_vv"},
  "mode_b": {"named": "pi_vv"},

  // Optional polarizers in front of ports C and D: null, a state name
  // (H, V, D, A, L, R) or {"h": [re, im], "v": [re, im]} with unit norm.
  "projection": {"pc": null, "pd": null},

  // Azimuthal sectors per port; sector k is centered on 2 pi k / grid_n.
  "grid_n": 28,

  // Which coincidence maps "map" writes: in, out or both (visibility needs both).
  "temporal": "both",

  // Shared radial envelope: unit, gaussian (waist) or lg_ring (waist, oam_abs).
  // nodes is the radial quadrature size used when fields depend on r.
  "radial_profile": {"kind": "unit", "waist": 1.0, "oam_abs": 1, "nodes": 64},

  // Also write visibility.pgm and visibility_mask.pgm.
  "render_pgm": false,

  // Synthetic event camera.
  "sim": {
    "pairs": 1000000,
    "coincidence_window_ns": 50.0,
    "psf_sigma_px": 1.5,
    "sensor_width_px": 256,
    "sensor_height_px": 256,
    "ring_radius_px": 60.0,      // radius of peak intensity of the |l| = 1 ring
    "ring_width_px": 50.0,       // photons land within ring_radius_px +- ring_width_px
    "seed": 1,
    "pair_interval_ns": 1000.0,  // mean spacing between emitted pairs
    "timing_jitter_ns": 1.0,
    "mean_pixels_per_hit": 4.0,  // each photon fires 1 + Poisson(mean - 1) pixels
    "pixel_time_spread_ns": 2.0,
    "accidental_rate": 0.0       // uncorrelated singles per pair interval
  },

  // Event analysis. Hits outside [min_radius_px, max_radius_px] from the
  // sensor center are dropped; null means no upper bound.
  "analysis": {
    "max_gap_px": 6.0,
    "max_gap_ns": 10.0,
    "min_out_count": 1.0,
    "min_radius_px": 0.0,
    "max_radius_px": null
  },

  "output_dir": "homcorr_out"
}
)";
}

nlohmann::json config_summary(const ExperimentConfig &cfg) {
    std::string_view temporal = cfg.temporal == TemporalSelection::In    ? "in"
                                : cfg.temporal == TemporalSelection::Out ? "out"
                                                                         : "both";
    std::string_view radial = cfg.radial.profile.kind == RadialProfile::Kind::Unit       ? "unit"
                              : cfg.radial.profile.kind == RadialProfile::Kind::Gaussian ? "gaussian"
                                                                                         : "lg_ring";
    nlohmann::json profile = {{"kind", radial}};
    if (cfg.radial.profile.kind != RadialProfile::Kind::Unit) {
        profile["waist"] = cfg.radial.profile.waist;
        profile["oam_abs"] = cfg.radial.profile.oam_abs;
        profile["nodes"] = cfg.radial.nodes;
    }
    return {
        {"mode_a", cfg.mode_a.to_json()},
        {"mode_b", cfg.mode_b.to_json()},
        {"projection", projection_to_json(cfg.projection)},
        {"temporal", temporal},
        {"radial_profile", profile},
    };
}

}  // namespace homcorr::cli
