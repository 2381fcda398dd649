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
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "homcorr/errors.h"
#include "homcorr/events.h"

namespace homcorr {

namespace {

class DisjointSets {
   public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        // Keep the earlier event as root so cluster order follows first arrival.
        if (b < a) {
            std::swap(a, b);
        }
        parent_[b] = a;
    }

   private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<ClusterHit> cluster(const std::vector<PhotonEvent> &events, double max_gap_px, double max_gap_ns) {
    const std::size_t n = events.size();
    const double gap2 = max_gap_px * max_gap_px;
    DisjointSets sets(n);
    std::size_t lo = 0;
    for (std::size_t i = 0; i < n; i++) {
        if (i > 0 && events[i].t < events[i - 1].t) {
            throw std::invalid_argument("cluster: events are not time sorted");
        }
        while (events[i].t - events[lo].t > max_gap_ns) {
            lo++;
        }
        for (std::size_t j = lo; j < i; j++) {
            if (events[j].port != events[i].port) {
                continue;
            }
            double dx = events[i].x - events[j].x;
            double dy = events[i].y - events[j].y;
            if (dx * dx + dy * dy <= gap2) {
                sets.unite(i, j);
            }
        }
    }

    struct Accumulator {
        double x = 0;
        double y = 0;
        double t = 0;
        int count = 0;
    };
    std::vector<std::size_t> slot(n, SIZE_MAX);
    std::vector<Accumulator> acc;
    std::vector<Port> ports;
    for (std::size_t i = 0; i < n; i++) {
        std::size_t root = sets.find(i);
        if (slot[root] == SIZE_MAX) {
            slot[root] = acc.size();
            acc.emplace_back();
            ports.push_back(events[i].port);
        }
        Accumulator &a = acc[slot[root]];
        a.x += events[i].x;
        a.y += events[i].y;
        a.t += events[i].t;
        a.count++;
    }
    std::vector<ClusterHit> hits;
    hits.reserve(acc.size());
    for (std::size_t k = 0; k < acc.size(); k++) {
        const Accumulator &a = acc[k];
        hits.push_back({ports[k], a.x / a.count, a.y / a.count, a.t / a.count, a.count});
    }
    std::stable_sort(hits.begin(), hits.end(), [](const ClusterHit &a, const ClusterHit &b) { return a.t < b.t; });
    return hits;
}

std::vector<Coincidence> find_coincidences(const std::vector<ClusterHit> &hits, double window_ns) {
    std::vector<std::size_t> cs;
    std::vector<std::size_t> ds;
    for (std::size_t i = 0; i < hits.size(); i++) {
        if (i > 0 && hits[i].t < hits[i - 1].t) {
            throw std::invalid_argument("find_coincidences: hits are not time sorted");
        }
        (hits[i].port == Port::C ? cs : ds).push_back(i);
    }

    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    std::size_t lo = 0;
    for (std::size_t c : cs) {
        double tc = hits[c].t;
        while (lo < ds.size() && hits[ds[lo]].t < tc - window_ns) {
            lo++;
        }
        for (std::size_t k = lo; k < ds.size() && hits[ds[k]].t <= tc + window_ns; k++) {
            candidates.emplace_back(std::abs(hits[ds[k]].t - tc), c, ds[k]);
        }
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<bool> used(hits.size(), false);
    std::vector<Coincidence> pairs;
    for (const auto &[dt, c, d] : candidates) {
        if (used[c] || used[d]) {
            continue;
        }
        used[c] = true;
        used[d] = true;
        pairs.push_back({c, d});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Coincidence &a, const Coincidence &b) { return a.c_hit < b.c_hit; });
    return pairs;
}

SectorGeometry SectorGeometry::from(const SimConfig &cfg) {
    return {cfg.center_x(), cfg.center_y(), 0.0, std::numeric_limits<double>::infinity()};
}

CoincidenceHistogram histogram_coincidences(const std::vector<ClusterHit> &hits,
                                            const std::vector<Coincidence> &coincidences, const AngularGrid &grid,
                                            const SectorGeometry &geometry) {
    CoincidenceHistogram h{grid, grid, Grid2D<double>(grid.size(), grid.size()), 0};
    auto locate = [&](const ClusterHit &hit) -> std::optional<int> {
        double dx = hit.cx - geometry.center_x;
        double dy = hit.cy - geometry.center_y;
        double r = std::hypot(dx, dy);
        if (r < geometry.min_radius_px || r > geometry.max_radius_px) {
            return std::nullopt;
        }
        return grid.sector_of(std::atan2(dy, dx));
    };
    for (const auto &c : coincidences) {
        if (c.c_hit >= hits.size() || c.d_hit >= hits.size()) {
            throw std::out_of_range("coincidence references a missing hit");
        }
        auto kc = locate(hits[c.c_hit]);
        auto kd = locate(hits[c.d_hit]);
        if (!kc || !kd) {
            h.rejected++;
            continue;
        }
        h.counts(*kc, *kd) += 1;
    }
    return h;
}

CorrelationMap bin_and_normalize(const CoincidenceHistogram &in, const CoincidenceHistogram &out_reference,
                                 double min_out_count) {
    if (!(in.grid_c == out_reference.grid_c) || !(in.grid_d == out_reference.grid_d)) {
        throw ConfigError("sector grid of the in run (" + std::to_string(in.grid_c.size()) +
                          ") does not match the out reference (" + std::to_string(out_reference.grid_c.size()) + ")");
    }
    CorrelationMap m{in.grid_c, in.grid_d, in.counts, out_reference.counts,
                     Grid2D<std::optional<double>>(in.counts.rows(), in.counts.cols())};
    const double floor = std::max(min_out_count, std::numeric_limits<double>::min());
    for (std::size_t i = 0; i < m.c_in.rows(); i++) {
        for (std::size_t j = 0; j < m.c_in.cols(); j++) {
            double out = m.c_out(i, j);
            if (out >= floor) {
                m.visibility(i, j) = (out - m.c_in(i, j)) / out;
            }
        }
    }
    return m;
}

CorrelationMap bin_and_normalize(const std::vector<ClusterHit> &hits, const std::vector<Coincidence> &coincidences,
                                 const AngularGrid &grid, const SectorGeometry &geometry,
                                 const Grid2D<double> &out_reference, double min_out_count) {
    if (out_reference.rows() != static_cast<std::size_t>(grid.size()) ||
        out_reference.cols() != static_cast<std::size_t>(grid.size())) {
        throw ConfigError("out reference is " + std::to_string(out_reference.rows()) + "x" +
                          std::to_string(out_reference.cols()) + " but the grid has " + std::to_string(grid.size()) +
                          " sectors");
    }
    CoincidenceHistogram in = histogram_coincidences(hits, coincidences, grid, geometry);
    CoincidenceHistogram ref{grid, grid, out_reference, 0};
    return bin_and_normalize(in, ref, min_out_count);
}

AnalyzedRun analyze_events(const std::vector<PhotonEvent> &events, const AngularGrid &grid,
                           const AnalysisConfig &cfg) {
    AnalyzedRun run{cluster(events, cfg.max_gap_px, cfg.max_gap_ns), {}, {grid, grid, {}, 0}};
    run.coincidences = find_coincidences(run.hits, cfg.coincidence_window_ns);
    run.histogram = histogram_coincidences(run.hits, run.coincidences, grid, cfg.geometry);
    return run;
}

}  // namespace homcorr
