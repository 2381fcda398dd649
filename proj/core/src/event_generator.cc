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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "homcorr/errors.h"
#include "homcorr/events.h"
#include "homcorr/modes.h"

namespace homcorr {

namespace {

constexpr std::uint64_t kBatchPairs = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Radii with density proportional to r F(r) for the |l| = 1 ring, confined to an annulus.
class RingRadiusSampler {
   public:
    explicit RingRadiusSampler(const SimConfig &cfg)
        : profile_(RadialProfile::lg_ring(cfg.ring_radius_px * std::sqrt(2.0), 1)),
          r_min_(std::max(0.0, cfg.ring_radius_px - cfg.ring_width_px)),
          r_max_(cfg.ring_radius_px + cfg.ring_width_px) {
        for (int k = 0; k <= 4096; k++) {
            double r = r_min_ + (r_max_ - r_min_) * k / 4096.0;
            g_max_ = std::max(g_max_, density(r));
        }
        g_max_ *= 1.01;
    }

    double operator()(std::mt19937_64 &rng) const {
        std::uniform_real_distribution<double> ur(r_min_, r_max_);
        std::uniform_real_distribution<double> ug(0.0, g_max_);
        while (true) {
            double r = ur(rng);
            if (ug(rng) <= density(r)) {
                return r;
            }
        }
    }

   private:
    double density(double r) const {
        return r * fluence(profile_, r);
    }

    RadialProfile profile_;
    double r_min_;
    double r_max_;
    double g_max_ = 0.0;
};

class BlobWriter {
   public:
    BlobWriter(const SimConfig &cfg, const RingRadiusSampler &radii, std::vector<PhotonEvent> &out)
        : cfg_(cfg), radii_(radii), out_(out), psf_(0.0, cfg.psf_sigma_px), spread_(0.0, cfg.pixel_time_spread_ns) {
        if (cfg.mean_pixels_per_hit > 1.0) {
            extra_pixels_ = std::poisson_distribution<int>(cfg.mean_pixels_per_hit - 1.0);
        }
    }

    void photon(std::mt19937_64 &rng, Port port, double phi, double t) {
        double r = radii_(rng);
        double px = cfg_.center_x() + r * std::cos(phi);
        double py = cfg_.center_y() + r * std::sin(phi);
        int n = 1 + (cfg_.mean_pixels_per_hit > 1.0 ? extra_pixels_(rng) : 0);
        for (int k = 0; k < n; k++) {
            double x = std::clamp(std::round(px + psf_(rng)), 0.0, cfg_.sensor_width_px - 1.0);
            double y = std::clamp(std::round(py + psf_(rng)), 0.0, cfg_.sensor_height_px - 1.0);
            out_.push_back({port, x, y, t + spread_(rng)});
        }
    }

   private:
    const SimConfig &cfg_;
    const RingRadiusSampler &radii_;
    std::vector<PhotonEvent> &out_;
    std::normal_distribution<double> psf_;
    std::uniform_real_distribution<double> spread_;
    std::poisson_distribution<int> extra_pixels_;
};

}  // namespace

std::optional<Port> parse_port(std::string_view s) {
    if (s == "C") {
        return Port::C;
    }
    if (s == "D") {
        return Port::D;
    }
    return std::nullopt;
}

char port_char(Port p) {
    return p == Port::C ? 'C' : 'D';
}

void SimConfig::validate() const {
    auto require = [](bool ok, const char *what) {
        if (!ok) {
            throw ConfigError(std::string("sim: ") + what);
        }
    };
    require(pairs > 0, "pairs must be positive");
    require(coincidence_window_ns > 0, "coincidence_window_ns must be positive");
    require(psf_sigma_px > 0, "psf_sigma_px must be positive");
    require(sensor_width_px > 0 && sensor_height_px > 0, "sensor dimensions must be positive");
    require(ring_radius_px > 0, "ring_radius_px must be positive");
    require(ring_width_px > 0, "ring_width_px must be positive");
    require(ring_radius_px + ring_width_px < std::min(sensor_width_px, sensor_height_px) / 2.0,
            "ring_radius_px + ring_width_px must fit inside the sensor");
    require(pair_interval_ns > 0, "pair_interval_ns must be positive");
    require(timing_jitter_ns >= 0, "timing_jitter_ns must be non-negative");
    require(mean_pixels_per_hit >= 1, "mean_pixels_per_hit must be at least 1");
    require(pixel_time_spread_ns >= 0, "pixel_time_spread_ns must be non-negative");
    require(accidental_rate >= 0, "accidental_rate must be non-negative");
}

SimulatedRun generate_events(const Grid2D<double> &joint, const AngularGrid &grid_c, const AngularGrid &grid_d,
                             const SimConfig &cfg) {
    cfg.validate();
    const std::size_t nc = grid_c.size();
    const std::size_t nd = grid_d.size();
    if (joint.rows() != nc || joint.cols() != nd) {
        throw ConfigError("coincidence matrix shape does not match the sector grids");
    }
    double total = 0.0;
    for (double v : joint.data()) {
        if (!(v >= 0) || !std::isfinite(v)) {
            throw ConfigError("coincidence matrix has negative or non-finite entries");
        }
        total += v;
    }
    if (!(total > 0)) {
        throw ConfigError("coincidence matrix is all zero; nothing to sample");
    }
    const double p_split = total / static_cast<double>(nc * nd);
    if (p_split > 1.0 + 1e-9) {
        throw ConfigError("coincidence matrix mean exceeds 1; expected per-sector joint probability densities");
    }

    const std::discrete_distribution<std::size_t> cells(joint.data().begin(), joint.data().end());
    const RingRadiusSampler radii(cfg);
    const double two_pi = 2 * std::numbers::pi;

    SimulatedRun run;
    run.true_sector_pairs = Grid2D<double>(nc, nd);
    run.events.reserve(static_cast<std::size_t>(cfg.pairs * 2 * cfg.mean_pixels_per_hit * 1.05));

    const std::uint64_t batches = (cfg.pairs + kBatchPairs - 1) / kBatchPairs;
    for (std::uint64_t b = 0; b < batches; b++) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(b)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> jitter(0.0, cfg.timing_jitter_ns);
        std::poisson_distribution<int> accidentals(cfg.accidental_rate > 0 ? cfg.accidental_rate : 1.0);
        auto pick_cell = cells;
        BlobWriter blobs(cfg, radii, run.events);

        const std::uint64_t first = b * kBatchPairs;
        const std::uint64_t last = std::min(cfg.pairs, first + kBatchPairs);
        for (std::uint64_t i = first; i < last; i++) {
            double t0 = (static_cast<double>(i) + 0.5 * unit(rng)) * cfg.pair_interval_ns;
            if (unit(rng) < p_split) {
                std::size_t cell = pick_cell(rng);
                std::size_t kc = cell / nd;
                std::size_t kd = cell % nd;
                double phi_c = grid_c.center(static_cast<int>(kc)) + (unit(rng) - 0.5) * grid_c.width();
                double phi_d = grid_d.center(static_cast<int>(kd)) + (unit(rng) - 0.5) * grid_d.width();
                blobs.photon(rng, Port::C, phi_c, t0 + jitter(rng));
                blobs.photon(rng, Port::D, phi_d, t0 + jitter(rng));
                run.true_sector_pairs(kc, kd) += 1;
                run.split_pairs++;
            } else {
                Port port = unit(rng) < 0.5 ? Port::C : Port::D;
                blobs.photon(rng, port, two_pi * unit(rng), t0 + jitter(rng));
                blobs.photon(rng, port, two_pi * unit(rng), t0 + jitter(rng));
            }
            run.photons += 2;
            if (cfg.accidental_rate > 0) {
                int k = accidentals(rng);
                for (int a = 0; a < k; a++) {
                    double t = (static_cast<double>(i) + unit(rng)) * cfg.pair_interval_ns;
                    Port port = unit(rng) < 0.5 ? Port::C : Port::D;
                    blobs.photon(rng, port, two_pi * unit(rng), t);
                    run.photons++;
                }
            }
        }
    }
    std::stable_sort(run.events.begin(), run.events.end(),
                     [](const PhotonEvent &a, const PhotonEvent &b) { return a.t < b.t; });
    return run;
}

SimulatedRun generate_events(const CorrelationMap &map, Temporal temporal, const SimConfig &cfg) {
    return generate_events(map.coincidences(temporal), map.grid_c, map.grid_d, cfg);
}

}  // namespace homcorr
