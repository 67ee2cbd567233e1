// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "foalkit/losses.hpp"
#include "foalkit/metrics.hpp"
#include "foalkit/oamix.hpp"
#include "foalkit/trafficlight.hpp"

namespace foalkit {

/// Every tunable the toolkit uses, with defaults ready to run. Parsed from
/// a flat `key = value` document ('#' starts a comment). Category sets are
/// written as palette-name lists, e.g. `sets.soc = motorcycle, traffic_light,
/// traffic_sign`.
struct RunConfig {
    LossWeights weights;
    CategoryConfig categories;
    TlColorParams tl;
    ApceConfig apce;
    double flip_prob = 0.5;
    std::uint64_t seed = 0;
    std::map<std::string, CategoryId> palette;
};

/// Defaults: urban-driving palette (road 0, building 1, sky 2, vegetation 3,
/// person 4, car 5, truck 6, bus 7, tram 8, motorcycle 9, traffic_light 10,
/// traffic_sign 11, streetlight 12, uncertain 255) and the documented
/// constants for every numeric knob.
RunConfig default_config();

/// Parses a config document on top of the defaults.
/// Throws ParseError naming the offending line.
RunConfig parse_config_text(const std::string& text);

/// Reads and parses a config file. Throws IoError / ParseError.
RunConfig load_config(const std::string& path);

}  // namespace foalkit
