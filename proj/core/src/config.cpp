// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "foalkit/error.hpp"

namespace foalkit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t idx = 0;
        const double out = std::stod(v, &idx);
        if (idx != v.size()) {
            fail(line, "trailing characters after number '" + v + "'");
        }
        return out;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(line, "expected an integer, got '" + v + "'");
    }
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    fail(line, "expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

CategoryId resolve_category(const std::string& token, const std::map<std::string, CategoryId>& palette,
                            int line) {
    if (!token.empty() && std::isdigit(static_cast<unsigned char>(token[0]))) {
        const long long id = parse_int(token, line);
        if (id < 0 || id > 255) {
            fail(line, "category id out of range: '" + token + "'");
        }
        return static_cast<CategoryId>(id);
    }
    const auto it = palette.find(token);
    if (it == palette.end()) {
        fail(line, "unknown category name '" + token + "'");
    }
    return it->second;
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.palette = {
        {"road", 0},         {"building", 1},     {"sky", 2},           {"vegetation", 3},
        {"person", 4},       {"car", 5},          {"truck", 6},         {"bus", 7},
        {"tram", 8},         {"motorcycle", 9},   {"traffic_light", 10}, {"traffic_sign", 11},
        {"streetlight", 12}, {"uncertain", 255},
    };
    cfg.categories.soc_set = {9, 10, 11};
    cfg.categories.vehicle_set = {5, 6, 7, 8, 9};
    cfg.categories.object_set = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    cfg.categories.road_id = 0;
    cfg.categories.vegetation_id = 3;
    cfg.categories.traffic_light_id = 10;
    cfg.categories.streetlight_id = 12;
    cfg.categories.area_threshold = 64;
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg = default_config();

    struct Deferred {
        std::string key;
        std::string value;
        int line = 0;
    };
    std::vector<Deferred> deferred;

    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string stripped = trim(raw);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            fail(line, "expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            fail(line, "empty key");
        }
        if (value.empty()) {
            fail(line, "empty value for '" + key + "'");
        }

        if (key == "seed") {
            const long long v = parse_int(value, line);
            if (v < 0) {
                fail(line, "seed must be non-negative");
            }
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (key == "flip_prob") {
            const double v = parse_double(value, line);
            if (v < 0.0 || v > 1.0) {
                fail(line, "flip_prob must be in [0, 1]");
            }
            cfg.flip_prob = v;
        } else if (key == "loss.lambda_sl1") {
            cfg.weights.lambda_sl1 = parse_double(value, line);
        } else if (key == "loss.lambda_sga") {
            cfg.weights.lambda_sga = parse_double(value, line);
        } else if (key == "loss.theta_tem") {
            cfg.weights.theta_tem = parse_double(value, line);
        } else if (key == "loss.theta_sim") {
            cfg.weights.theta_sim = parse_double(value, line);
        } else if (key == "tl.tau") {
            const double v = parse_double(value, line);
            if (v <= 0.0) {
                fail(line, "tl.tau must be positive");
            }
            cfg.tl.tau = v;
        } else if (key == "tl.aspect_threshold") {
            cfg.tl.aspect_threshold = parse_double(value, line);
        } else if (key == "tl.saturation_gate") {
            cfg.tl.saturation_gate = parse_double(value, line);
        } else if (key == "tl.value_gate") {
            cfg.tl.value_gate = parse_double(value, line);
        } else if (key == "mix.area_threshold") {
            const long long v = parse_int(value, line);
            if (v < 0) {
                fail(line, "mix.area_threshold must be non-negative");
            }
            cfg.categories.area_threshold = v;
        } else if (key == "apce.low_ratio") {
            cfg.apce.low_ratio = parse_double(value, line);
        } else if (key == "apce.tolerance_radius") {
            const long long v = parse_int(value, line);
            if (v < 0) {
                fail(line, "apce.tolerance_radius must be non-negative");
            }
            cfg.apce.tolerance_radius = static_cast<int>(v);
        } else if (key == "apce.strict_empty") {
            cfg.apce.strict_empty = parse_bool(value, line);
        } else if (key == "apce.thresholds") {
            std::vector<double> ts;
            for (const std::string& item : split_list(value)) {
                ts.push_back(parse_double(item, line));
            }
            if (ts.empty()) {
                fail(line, "apce.thresholds needs at least one value");
            }
            cfg.apce.high_thresholds = ts;
        } else if (key.rfind("palette.", 0) == 0) {
            const std::string name = key.substr(8);
            if (name.empty()) {
                fail(line, "palette entry needs a name");
            }
            const long long id = parse_int(value, line);
            if (id < 0 || id > 255) {
                fail(line, "palette id out of range for '" + name + "'");
            }
            cfg.palette[name] = static_cast<CategoryId>(id);
        } else if (key.rfind("sets.", 0) == 0 || key.rfind("categories.", 0) == 0) {
            deferred.push_back({key, value, line});
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }

    for (const Deferred& d : deferred) {
        if (d.key == "sets.soc" || d.key == "sets.vehicle" || d.key == "sets.object") {
            std::set<CategoryId> ids;
            for (const std::string& token : split_list(d.value)) {
                ids.insert(resolve_category(token, cfg.palette, d.line));
            }
            if (d.key == "sets.soc") {
                cfg.categories.soc_set = ids;
            } else if (d.key == "sets.vehicle") {
                cfg.categories.vehicle_set = ids;
            } else {
                cfg.categories.object_set = ids;
            }
        } else if (d.key == "categories.road") {
            cfg.categories.road_id = resolve_category(d.value, cfg.palette, d.line);
        } else if (d.key == "categories.vegetation") {
            cfg.categories.vegetation_id = resolve_category(d.value, cfg.palette, d.line);
        } else if (d.key == "categories.traffic_light") {
            cfg.categories.traffic_light_id = resolve_category(d.value, cfg.palette, d.line);
        } else if (d.key == "categories.streetlight") {
            cfg.categories.streetlight_id = resolve_category(d.value, cfg.palette, d.line);
        } else {
            fail(d.line, "unknown key '" + d.key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace foalkit
