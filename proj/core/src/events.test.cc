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

#include "homcorr/events.h"

#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "homcorr/errors.h"

using namespace homcorr;

namespace {

constexpr double kPi = std::numbers::pi;

SimConfig small_config(std::uint64_t pairs) {
    SimConfig cfg;
    cfg.pairs = pairs;
    return cfg;
}

CorrelationMap rad_pi_map(int n) {
    AngularGrid g(n);
    return correlation_map(make_named_mode(NamedMode::RadialVV), make_named_mode(NamedMode::PiVV), g, g);
}

std::vector<PhotonEvent> blob(Port port, double x, double y, double t, int n) {
    std::vector<PhotonEvent> r;
    for (int k = 0; k < n; k++) {
        r.push_back({port, x + (k % 2), y + (k / 2 % 2), t + 0.1 * k});
    }
    return r;
}

}  // namespace

TEST(events, sim_config_validation) {
    SimConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    auto broken = [](auto mutate) {
        SimConfig c;
        mutate(c);
        return c;
    };
    EXPECT_THROW(broken([](SimConfig &c) { c.pairs = 0; }).validate(), ConfigError);
    EXPECT_THROW(broken([](SimConfig &c) { c.coincidence_window_ns = 0; }).validate(), ConfigError);
    EXPECT_THROW(broken([](SimConfig &c) { c.psf_sigma_px = -1; }).validate(), ConfigError);
    EXPECT_THROW(broken([](SimConfig &c) { c.ring_radius_px = 100; }).validate(), ConfigError);
    EXPECT_THROW(broken([](SimConfig &c) { c.mean_pixels_per_hit = 0.5; }).validate(), ConfigError);
    EXPECT_THROW(broken([](SimConfig &c) { c.accidental_rate = -0.1; }).validate(), ConfigError);
}

TEST(events, generator_rejects_bad_matrices) {
    AngularGrid g(4);
    EXPECT_THROW(generate_events(Grid2D<double>(4, 4, 0.0), g, g, small_config(10)), ConfigError);
    EXPECT_THROW(generate_events(Grid2D<double>(4, 4, 2.0), g, g, small_config(10)), ConfigError);
    EXPECT_THROW(generate_events(Grid2D<double>(3, 4, 0.5), g, g, small_config(10)), ConfigError);
    Grid2D<double> negative(4, 4, 0.5);
    negative(1, 1) = -0.1;
    EXPECT_THROW(generate_events(negative, g, g, small_config(10)), ConfigError);
}

TEST(events, generator_is_deterministic_and_sorted) {
    auto m = rad_pi_map(8);
    auto cfg = small_config(20000);
    auto a = generate_events(m, Temporal::In, cfg);
    auto b = generate_events(m, Temporal::In, cfg);
    EXPECT_EQ(a.events, b.events);
    EXPECT_EQ(a.true_sector_pairs, b.true_sector_pairs);
    for (std::size_t k = 1; k < a.events.size(); k++) {
        ASSERT_LE(a.events[k - 1].t, a.events[k].t);
    }
    for (const auto &e : a.events) {
        ASSERT_GE(e.x, 0);
        ASSERT_LT(e.x, cfg.sensor_width_px);
        ASSERT_GE(e.y, 0);
        ASSERT_LT(e.y, cfg.sensor_height_px);
    }
    cfg.seed = 2;
    auto c = generate_events(m, Temporal::In, cfg);
    EXPECT_NE(a.events, c.events);
}

TEST(events, split_fraction_follows_matrix_mean) {
    auto m = rad_pi_map(8);
    auto cfg = small_config(40000);
    // Out: C_out = 1/2 everywhere, so half the pairs split.
    auto run = generate_events(m, Temporal::Out, cfg);
    double frac = static_cast<double>(run.split_pairs) / cfg.pairs;
    EXPECT_NEAR(frac, 0.5, 4 * std::sqrt(0.25 / cfg.pairs));
    EXPECT_EQ(run.photons, 2 * cfg.pairs);
}

TEST(events, clustering_examples) {
    auto one = blob(Port::C, 50, 50, 100, 5);
    auto hits = cluster(one, 6, 10);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].n_pixels, 5);
    EXPECT_NEAR(hits[0].cx, (50 + 51 + 50 + 51 + 50) / 5.0, 1e-12);
    EXPECT_NEAR(hits[0].t, 100.2, 1e-12);

    std::vector<PhotonEvent> two = blob(Port::C, 50, 50, 100, 3);
    auto far = blob(Port::C, 80, 50, 100.05, 3);
    two.insert(two.end(), far.begin(), far.end());
    std::stable_sort(two.begin(), two.end(), [](const auto &a, const auto &b) { return a.t < b.t; });
    EXPECT_EQ(cluster(two, 6, 10).size(), 2u);

    // Same place, different ports, never merge.
    std::vector<PhotonEvent> ports = {{Port::C, 10, 10, 0}, {Port::D, 10, 10, 0}};
    EXPECT_EQ(cluster(ports, 6, 10).size(), 2u);
    // Same place, far apart in time.
    std::vector<PhotonEvent> late = {{Port::C, 10, 10, 0}, {Port::C, 10, 10, 50}};
    EXPECT_EQ(cluster(late, 6, 10).size(), 2u);

    std::vector<PhotonEvent> unsorted = {{Port::C, 10, 10, 5}, {Port::C, 10, 10, 0}};
    EXPECT_THROW(cluster(unsorted, 6, 10), std::invalid_argument);
    EXPECT_TRUE(cluster({}, 6, 10).empty());
}

TEST(events, clustering_recovers_generated_photons) {
    AngularGrid g(8);
    // Every pair splits, so no two photons share a port and a time slot.
    auto run = generate_events(Grid2D<double>(8, 8, 1.0), g, g, small_config(20000));
    auto hits = cluster(run.events, 6, 10);
    double ratio = static_cast<double>(hits.size()) / run.photons;
    EXPECT_NEAR(ratio, 1.0, 0.01);
    for (const auto &h : hits) {
        ASSERT_GE(h.n_pixels, 1);
    }
}

TEST(events, coincidence_examples) {
    std::vector<ClusterHit> hits = {{Port::C, 0, 0, 0.0, 1}, {Port::D, 0, 0, 25.0, 1}};
    EXPECT_EQ(find_coincidences(hits, 50).size(), 1u);
    EXPECT_TRUE(find_coincidences(hits, 20).empty());

    std::vector<ClusterHit> three = {
        {Port::C, 0, 0, 0.0, 1}, {Port::D, 0, 0, 8.0, 1}, {Port::C, 0, 0, 10.0, 1}};
    auto pairs = find_coincidences(three, 50);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], (Coincidence{2, 1}));

    std::vector<ClusterHit> unsorted = {{Port::C, 0, 0, 5.0, 1}, {Port::D, 0, 0, 0.0, 1}};
    EXPECT_THROW(find_coincidences(unsorted, 50), std::invalid_argument);
}

TEST(events, pipeline_conservation) {
    auto m = rad_pi_map(12);
    auto cfg = small_config(20000);
    auto run = generate_events(m, Temporal::In, cfg);
    AnalysisConfig acfg;
    acfg.geometry = SectorGeometry::from(cfg);
    auto analyzed = analyze_events(run.events, AngularGrid(12), acfg);
    EXPECT_GE(analyzed.hits.size(), 2 * analyzed.coincidences.size());
    for (const auto &c : analyzed.coincidences) {
        ASSERT_LT(c.c_hit, analyzed.hits.size());
        ASSERT_LT(c.d_hit, analyzed.hits.size());
        ASSERT_EQ(analyzed.hits[c.c_hit].port, Port::C);
        ASSERT_EQ(analyzed.hits[c.d_hit].port, Port::D);
    }
    // Coincidences come from split pairs, minus clustering losses.
    double ratio = static_cast<double>(analyzed.coincidences.size()) / run.split_pairs;
    EXPECT_NEAR(ratio, 1.0, 0.02);
}

TEST(events, identical_runs_give_zero_visibility) {
    auto m = rad_pi_map(8);
    auto cfg = small_config(20000);
    auto run = generate_events(m, Temporal::In, cfg);
    AnalysisConfig acfg;
    acfg.geometry = SectorGeometry::from(cfg);
    auto a = analyze_events(run.events, AngularGrid(8), acfg);
    auto measured = bin_and_normalize(a.histogram, a.histogram);
    for (const auto &v : measured.visibility.data()) {
        if (v) {
            EXPECT_EQ(*v, 0.0);
        }
    }
    auto other = analyze_events(run.events, AngularGrid(6), acfg);
    EXPECT_THROW(bin_and_normalize(a.histogram, other.histogram), ConfigError);
    EXPECT_THROW(bin_and_normalize(a.hits, a.coincidences, AngularGrid(8), acfg.geometry, Grid2D<double>(6, 6)),
                 ConfigError);
}

TEST(events, heralded_lobes_in_measurement) {
    const int n = 8;
    auto m = rad_pi_map(n);
    auto cfg = small_config(200000);
    auto run = generate_events(m, Temporal::In, cfg);
    AnalysisConfig acfg;
    acfg.geometry = SectorGeometry::from(cfg);
    auto a = analyze_events(run.events, AngularGrid(n), acfg);
    // Herald on phiC = 0: counts across phiD follow 1 - cos 2phiD.
    double row = 0;
    for (int j = 0; j < n; j++) {
        row += a.histogram.counts(0, j);
    }
    ASSERT_GT(row, 1000);
    AngularGrid g(n);
    // Centroid noise near sector borders moves a few hits into neighboring
    // sectors; allow 1% of the row on top of the Poisson spread.
    const double leakage = 0.01 * row;
    for (int j = 0; j < n; j++) {
        double p = (1 - std::cos(2 * g.center(j))) / n;
        double expected = row * p;
        double sigma = std::sqrt(std::max(expected, 1.0));
        EXPECT_LE(std::abs(a.histogram.counts(0, j) - expected), 5 * sigma + leakage) << j;
    }
}

TEST(events, histogram_rejects_out_of_annulus) {
    std::vector<ClusterHit> hits = {{Port::C, 128 + 60, 128, 0, 1}, {Port::D, 128, 128 + 60, 0, 1}};
    std::vector<Coincidence> pairs = {{0, 1}};
    SectorGeometry geo{128, 128, 10, 100};
    auto h = histogram_coincidences(hits, pairs, AngularGrid(4), geo);
    EXPECT_EQ(h.counts(0, 1), 1.0);
    EXPECT_EQ(h.rejected, 0u);
    SectorGeometry tight{128, 128, 70, 100};
    EXPECT_EQ(histogram_coincidences(hits, pairs, AngularGrid(4), tight).rejected, 1u);
    std::vector<Coincidence> dangling = {{0, 7}};
    EXPECT_THROW(histogram_coincidences(hits, dangling, AngularGrid(4), geo), std::out_of_range);
}

TEST(events, csv_round_trip) {
    auto m = rad_pi_map(4);
    auto run = generate_events(m, Temporal::Out, small_config(500));
    std::stringstream io;
    write_events_csv(io, run.events);
    EXPECT_EQ(io.str().substr(0, 14), "port,x,y,t_ns\n");
    auto back = read_events_csv(io);
    EXPECT_EQ(back, run.events);
}

TEST(events, csv_errors_name_the_line) {
    auto parse = [](const std::string &s) {
        std::istringstream in(s);
        return read_events_csv(in);
    };
    EXPECT_THROW(parse(""), FormatError);
    EXPECT_THROW(parse("port,x,y,t_ns\n"), FormatError);
    EXPECT_THROW(parse("x,y,t\nC,1,2,3\n"), FormatError);
    auto expect_line = [&](const std::string &s, const std::string &needle) {
        try {
            parse(s);
            ADD_FAILURE() << "no error for " << s;
        } catch (const FormatError &e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_line("port,x,y,t_ns\nC,1,2,3\nE,1,2,3\n", "line 3");
    expect_line("port,x,y,t_ns\nC,1,2\n", "line 2");
    expect_line("port,x,y,t_ns\nC,1,2,3,4\n", "line 2");
    expect_line("port,x,y,t_ns\nD,1,2,inf\n", "line 2");
    expect_line("port,x,y,t_ns\nD,1,nan,2\n", "line 2");
    EXPECT_EQ(parse("port,x,y,t_ns\r\nD,1.5,2,3\r\n").size(), 1u);
}

TEST(events, ports) {
    EXPECT_EQ(parse_port("C"), Port::C);
    EXPECT_EQ(parse_port("D"), Port::D);
    EXPECT_FALSE(parse_port("c").has_value());
    EXPECT_EQ(port_char(Port::D), 'D');
}
