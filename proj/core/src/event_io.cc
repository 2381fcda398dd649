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

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "homcorr/errors.h"
#include "homcorr/events.h"
#include "homcorr/map_io.h"

namespace homcorr {

static constexpr std::string_view kEventHeader = "port,x,y,t_ns";

void write_events_csv(std::ostream &out, const std::vector<PhotonEvent> &events) {
    std::string line;
    out << kEventHeader << '\n';
    for (const auto &e : events) {
        line.clear();
        line += port_char(e.port);
        line += ',';
        line += format_double(e.x);
        line += ',';
        line += format_double(e.y);
        line += ',';
        line += format_double(e.t);
        line += '\n';
        out << line;
    }
}

std::vector<PhotonEvent> read_events_csv(std::istream &in) {
    std::vector<PhotonEvent> events;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &why) {
        throw FormatError("event stream line " + std::to_string(line_no) + ": " + why);
    };
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!have_header) {
            if (line != kEventHeader) {
                fail("expected header '" + std::string(kEventHeader) + "'");
            }
            have_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        std::string_view rest(line);
        std::string_view fields[4];
        for (int k = 0; k < 4; k++) {
            auto comma = rest.find(',');
            if (k < 3) {
                if (comma == std::string_view::npos) {
                    fail("expected 4 comma-separated fields");
                }
                fields[k] = rest.substr(0, comma);
                rest.remove_prefix(comma + 1);
            } else {
                if (comma != std::string_view::npos) {
                    fail("expected 4 comma-separated fields");
                }
                fields[k] = rest;
            }
        }
        auto port = parse_port(fields[0]);
        if (!port) {
            fail("port must be C or D, got '" + std::string(fields[0]) + "'");
        }
        PhotonEvent e{*port, 0, 0, 0};
        auto x = parse_double(fields[1]);
        auto y = parse_double(fields[2]);
        auto t = parse_double(fields[3]);
        if (!x || !y || !t || !std::isfinite(*x) || !std::isfinite(*y) || !std::isfinite(*t)) {
            fail("x, y and t_ns must be finite numbers");
        }
        e.x = *x;
        e.y = *y;
        e.t = *t;
        events.push_back(e);
    }
    if (!have_header) {
        throw FormatError("event stream is empty");
    }
    if (events.empty()) {
        throw FormatError("event stream has a header but no events");
    }
    return events;
}

}  // namespace homcorr
