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

#ifndef HOMCORR_EVENTS_H
#define HOMCORR_EVENTS_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "homcorr/correlation.h"
#include "homcorr/grid.h"

namespace homcorr {

enum class Port : std::uint8_t { C, D };

std::optional<Port> parse_port(std::string_view s);
char port_char(Port p);

/// One time-stamped pixel activation. x, y are pixel coordinates inside the
/// port's sensor region; t is in nanoseconds.
struct PhotonEvent {
    Port port = Port::C;
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    bool operator==(const PhotonEvent &) const = default;
};

/// Reconstructed photon: centroid and mean time of one pixel cluster.
struct ClusterHit {
    Port port = Port::C;
    double cx = 0.0;
    double cy = 0.0;
    double t = 0.0;
    int n_pixels = 0;

    bool operator==(const ClusterHit &) const = default;
};

struct SimConfig {
    std::uint64_t pairs = 1'000'000;
    double coincidence_window_ns = 50.0;
    double psf_sigma_px = 1.5;
    int sensor_width_px = 256;
    int sensor_height_px = 256;
    /// Radius of peak intensity of the |l| = 1 ring envelope.
    double ring_radius_px = 60.0;
    /// Photons are confined to ring_radius_px +- ring_width_px.
    double ring_width_px = 50.0;
    std::uint64_t seed = 1;
    /// Pair i is emitted at (i + u) * pair_interval_ns with u uniform in [0, 1/2).
    double pair_interval_ns = 1000.0;
    double timing_jitter_ns = 1.0;
    /// Mean pixel events per photon; each photon fires 1 + Poisson(mean - 1) pixels.
    double mean_pixels_per_hit = 4.0;
    double pixel_time_spread_ns = 2.0;
    /// Mean number of uncorrelated single photons per pair interval.
    double accidental_rate = 0.0;

    /// Throws ConfigError for non-positive or inconsistent values.
    void validate() const;
    double center_x() const {
        return sensor_width_px / 2.0;
    }
    double center_y() const {
        return sensor_height_px / 2.0;
    }
};

struct SimulatedRun {
    std::vector<PhotonEvent> events;
    /// Ground truth.
    std::uint64_t photons = 0;
    std::uint64_t split_pairs = 0;
    Grid2D<double> true_sector_pairs;
};

/// Synthetic event-camera stream for one temporal configuration.
///
/// `joint` holds C(phiC_i, phiD_j) at sector centers as returned by
/// correlation_map (unit-norm fields, no fluence factor), so its mean is the
/// probability that a pair leaves through separate ports. Such pairs get a
/// sector pair drawn from `joint`, a uniform azimuth inside each sector and a
/// radius from the ring envelope. The remaining pairs leave together through
/// one randomly chosen port with uniform azimuths. Every photon is smeared
/// into a pixel blob. The stream is time sorted and depends only on
/// (joint, cfg), including cfg.seed.
///
/// Throws ConfigError for an all-zero matrix or a mean above one.
SimulatedRun generate_events(const Grid2D<double> &joint, const AngularGrid &grid_c, const AngularGrid &grid_d,
                             const SimConfig &cfg);

/// Convenience overload choosing c_in or c_out from a map.
SimulatedRun generate_events(const CorrelationMap &map, Temporal temporal, const SimConfig &cfg);

/// Connected components in (x, y, t): two events of the same port link when
/// their Euclidean pixel distance is <= max_gap_px and their time difference
/// is <= max_gap_ns. Each component becomes one hit at the unweighted mean
/// position and time. Hits are returned sorted by time.
/// Throws std::invalid_argument if events are not time sorted.
std::vector<ClusterHit> cluster(const std::vector<PhotonEvent> &events, double max_gap_px, double max_gap_ns);

struct Coincidence {
    std::size_t c_hit;
    std::size_t d_hit;

    bool operator==(const Coincidence &) const = default;
};

/// Pairs port-C and port-D hits with |tC - tD| <= window, closest pairs first,
/// each hit used at most once. Result is ordered by the C hit index.
/// Throws std::invalid_argument if hits are not time sorted.
std::vector<Coincidence> find_coincidences(const std::vector<ClusterHit> &hits, double window_ns);

/// Where each port's image sits on the sensor and which radii are analyzed.
struct SectorGeometry {
    double center_x = 128.0;
    double center_y = 128.0;
    double min_radius_px = 0.0;
    double max_radius_px = std::numeric_limits<double>::infinity();

    static SectorGeometry from(const SimConfig &cfg);
};

struct CoincidenceHistogram {
    AngularGrid grid_c;
    AngularGrid grid_d;
    Grid2D<double> counts;
    /// Coincidences dropped because a hit fell outside the analyzed annulus.
    std::size_t rejected = 0;
};

CoincidenceHistogram histogram_coincidences(const std::vector<ClusterHit> &hits,
                                            const std::vector<Coincidence> &coincidences, const AngularGrid &grid,
                                            const SectorGeometry &geometry);

/// Measured map: c_in = in counts, c_out = reference counts, visibility
/// (out - in) / out where the reference has at least `min_out_count` counts.
/// Throws ConfigError when the two grids differ.
CorrelationMap bin_and_normalize(const CoincidenceHistogram &in, const CoincidenceHistogram &out_reference,
                                 double min_out_count = 1.0);

/// Same, with a bare reference matrix that must be grid.size() square.
CorrelationMap bin_and_normalize(const std::vector<ClusterHit> &hits, const std::vector<Coincidence> &coincidences,
                                 const AngularGrid &grid, const SectorGeometry &geometry,
                                 const Grid2D<double> &out_reference, double min_out_count = 1.0);

struct AnalysisConfig {
    double max_gap_px = 6.0;
    double max_gap_ns = 10.0;
    double coincidence_window_ns = 50.0;
    double min_out_count = 1.0;
    SectorGeometry geometry;
};

struct AnalyzedRun {
    std::vector<ClusterHit> hits;
    std::vector<Coincidence> coincidences;
    CoincidenceHistogram histogram;
};

/// cluster -> find_coincidences -> histogram_coincidences.
AnalyzedRun analyze_events(const std::vector<PhotonEvent> &events, const AngularGrid &grid,
                           const AnalysisConfig &cfg);

/// Event stream text format: header "port,x,y,t_ns" then one "C|D,x,y,t" line per event.
void write_events_csv(std::ostream &out, const std::vector<PhotonEvent> &events);
/// Throws FormatError naming the offending line; an empty stream is an error.
std::vector<PhotonEvent> read_events_csv(std::istream &in);

}  // namespace homcorr

#endif
