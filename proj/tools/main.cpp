// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foalkit/config.hpp"
#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/losses.hpp"
#include "foalkit/mask_ops.hpp"
#include "foalkit/metrics.hpp"
#include "foalkit/oamix.hpp"
#include "foalkit/png_io.hpp"
#include "foalkit/scheduler.hpp"
#include "foalkit/trafficlight.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace foalkit;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

RunConfig effective_config(const CommonOpts& opts) {
    RunConfig cfg = opts.config_path.empty() ? default_config() : load_config(opts.config_path);
    if (opts.seed) {
        cfg.seed = *opts.seed;
    }
    return cfg;
}

fs::path ensure_out_dir(const CommonOpts& opts) {
    const fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << text;
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
    }
}

void write_json(const fs::path& path, const json& doc) {
    write_text_atomic(path, doc.dump(2) + "\n");
}

/// PNG files of a directory, sorted by filename.
std::vector<fs::path> png_listing(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("'" + dir.string() + "' is not a directory");
    }
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Runs fn(0..n-1) on up to `jobs` threads; the first exception wins.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

std::string trimmed(const std::string& s) {
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

/// `key = value` lines with '#' comments; duplicate keys are rejected.
std::map<std::string, std::string> parse_kv_file(const fs::path& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + what + " '" + path.string() + "'");
    }
    std::map<std::string, std::string> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string stripped = trimmed(raw);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError(what + " line " + std::to_string(line) + ": expected 'key = value'");
        }
        const std::string key = trimmed(stripped.substr(0, eq));
        const std::string value = trimmed(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(what + " line " + std::to_string(line) + ": empty key or value");
        }
        if (!out.emplace(key, value).second) {
            throw ParseError(what + " line " + std::to_string(line) + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

json bbox_json(const BBox& b) {
    return json{{"top", b.top}, {"left", b.left}, {"height", b.height}, {"width", b.width}};
}

// ----------------------------------------------------------------- mix

struct MixOpts {
    CommonOpts common;
    std::string domain;
    std::string real_image;
    std::string fake_image;
    std::string real_labels;
    std::string fake_labels;
};

void check_extents(const Image& real, const std::string& real_path, const Image& fake,
                   const std::string& fake_path, const LabelMap& rl, const std::string& rl_path,
                   const LabelMap& fl, const std::string& fl_path) {
    if (!real.same_shape(fake)) {
        throw ShapeMismatch("real image '" + real_path + "' and fake image '" + fake_path +
                            "' have different shapes");
    }
    if (rl.height != real.height || rl.width != real.width) {
        throw ShapeMismatch("labels '" + rl_path + "' do not match image '" + real_path + "'");
    }
    if (fl.height != fake.height || fl.width != fake.width) {
        throw ShapeMismatch("labels '" + fl_path + "' do not match image '" + fake_path + "'");
    }
}

void run_mix(const MixOpts& opts) {
    const RunConfig cfg = effective_config(opts.common);
    const fs::path out_dir = ensure_out_dir(opts.common);

    const Image real = read_image(opts.real_image);
    const Image fake = read_image(opts.fake_image);
    const LabelMap rl = read_labels(opts.real_labels);
    const LabelMap fl = read_labels(opts.fake_labels);
    check_extents(real, opts.real_image, fake, opts.fake_image, rl, opts.real_labels, fl, opts.fake_labels);

    const auto [obj, road] = object_and_road_masks(rl, cfg.categories);
    const std::vector<ConnectedRegion> regions = select_mix_regions(fl, obj, road, cfg.categories);
    BinaryMask q_o(fl.height, fl.width);
    for (const ConnectedRegion& region : regions) {
        q_o = mask_or(q_o, region.mask);
    }
    const BinaryMask q_f = flip_h(q_o);

    MixResult result;
    std::vector<std::size_t> flipped;
    if (opts.domain == "a") {
        result = compose_mix_a(fake, real, q_o, q_f);
    } else {
        std::vector<ConnectedRegion> tl_regions;
        for (const ConnectedRegion& region : regions) {
            if (region.category == cfg.categories.traffic_light_id) {
                tl_regions.push_back(region);
            }
        }
        std::mt19937_64 rng(cfg.seed);
        FlipOutcome outcome =
            flip_tl_instances(compose_object_image(fake, q_o, q_f), tl_regions, rng, cfg.flip_prob);
        flipped = outcome.flipped;
        result = compose_mix_b_with_object(outcome.image, real, q_o, q_f, road);
    }

    write_image(result.mixed, (out_dir / "mixed.png").string());
    write_mask(result.q_orig, (out_dir / "q_orig.png").string());
    write_mask(result.q_flip, (out_dir / "q_flip.png").string());
    write_mask(result.context, (out_dir / "context.png").string());

    json inventory = json::array();
    for (const ConnectedRegion& region : regions) {
        inventory.push_back(json{{"category", region.category}, {"area", region.area}, {"bbox", bbox_json(region.bbox)}});
    }
    json flipped_boxes = json::array();
    for (std::size_t idx : flipped) {
        flipped_boxes.push_back(idx);
    }
    const json sidecar = {
        {"domain", opts.domain},
        {"seed", cfg.seed},
        {"ala_factor", result.ala_factor},
        {"regions", inventory},
        {"flipped_tl_instances", flipped_boxes},
    };
    write_json(out_dir / "mix.json", sidecar);
}

// ----------------------------------------------------------------- loss

struct LossOpts {
    CommonOpts common;
    std::string manifest;
    std::string out_name = "loss.json";
};

const std::set<std::string>& known_image_keys() {
    static const std::set<std::string> keys = {"x_ra",     "x_rb",     "x_fa",         "x_fb",
                                               "x_rec",    "x_ab_mix", "x_ba_mix",     "gray_ra",
                                               "gradient_map", "edge_map"};
    return keys;
}

const std::set<std::string>& known_mask_keys() {
    static const std::set<std::string> keys = {"mask.sl_bright", "mask.vegetation", "mask.traffic_light",
                                               "mask.soc",       "mask.q_ao",       "mask.q_bo",
                                               "mask.q_con",     "mask.tl_a",       "mask.tl_b"};
    return keys;
}

struct LossInputs {
    std::map<std::string, Image> images;
    std::map<std::string, BinaryMask> masks;

    bool has(const std::string& key) const {
        return images.count(key) == 1 || masks.count(key) == 1;
    }
    std::vector<std::string> absent(const std::vector<std::string>& keys) const {
        std::vector<std::string> missing;
        for (const std::string& key : keys) {
            if (!has(key)) {
                missing.push_back(key);
            }
        }
        return missing;
    }
};

LossInputs load_loss_inputs(const fs::path& manifest) {
    const std::map<std::string, std::string> entries = parse_kv_file(manifest, "manifest");
    LossInputs in;
    for (const auto& [key, path] : entries) {
        try {
            if (known_image_keys().count(key) == 1) {
                in.images.emplace(key, read_image(path));
            } else if (known_mask_keys().count(key) == 1) {
                in.masks.emplace(key, read_mask(path));
            } else {
                throw ParseError("manifest: unknown input key '" + key + "'");
            }
        } catch (const IoError& e) {
            throw MissingInput("manifest entry '" + key + "': " + e.what());
        }
    }
    return in;
}

TlRegionMasks empty_tl_masks(int h, int w) {
    TlRegionMasks m;
    m.bright = BinaryMask(h, w);
    m.dark = BinaryMask(h, w);
    m.upper = BinaryMask(h, w);
    m.lower = BinaryMask(h, w);
    return m;
}

void run_loss(const LossOpts& opts) {
    const RunConfig cfg = effective_config(opts.common);
    const fs::path out_dir = ensure_out_dir(opts.common);
    const LossInputs in = load_loss_inputs(opts.manifest);
    const LossWeights& w = cfg.weights;

    static const std::vector<std::pair<std::string, std::vector<std::string>>> term_inputs = {
        {"abc", {"x_fb", "mask.sl_bright", "mask.vegetation", "gray_ra", "mask.traffic_light"}},
        {"cbc", {"mask.soc", "x_rec", "x_ra"}},
        {"ac_a", {"mask.q_ao", "x_ab_mix", "x_rb"}},
        {"ac_b", {"mask.q_bo", "mask.q_con", "x_ba_mix", "x_ra", "x_rb"}},
        {"tll", {"x_fa", "mask.tl_b"}},
        {"tlc", {"x_ra", "x_fa", "x_rb", "mask.tl_a", "mask.tl_b"}},
    };

    std::map<std::string, double> computed;
    json skipped = json::object();
    json notes = json::array();

    for (const auto& [term, keys] : term_inputs) {
        const std::vector<std::string> missing = in.absent(keys);
        if (!missing.empty()) {
            std::string reason = "missing";
            for (const std::string& key : missing) {
                reason += " " + key;
            }
            skipped[term] = reason;
            continue;
        }
        if (term == "abc") {
            const Image& x_fb = in.images.at("x_fb");
            Image gm(x_fb.height, x_fb.width, 1);
            Image em(x_fb.height, x_fb.width, 1);
            if (in.has("gradient_map") && in.has("edge_map")) {
                gm = in.images.at("gradient_map");
                em = in.images.at("edge_map");
            } else {
                notes.push_back("abc: gradient/edge maps defaulted to zero");
            }
            computed[term] = artifact_bias_correction_loss(
                x_fb, in.masks.at("mask.sl_bright"), in.masks.at("mask.vegetation"),
                to_grayscale(in.images.at("gray_ra")), in.masks.at("mask.traffic_light"), gm, em,
                PenaltyHook{}, w);
        } else if (term == "cbc") {
            computed[term] =
                color_bias_correction_loss(in.masks.at("mask.soc"), in.images.at("x_rec"), in.images.at("x_ra"), w);
        } else if (term == "ac_a") {
            computed[term] =
                appearance_consistency_a(in.masks.at("mask.q_ao"), in.images.at("x_ab_mix"), in.images.at("x_rb"), w);
        } else if (term == "ac_b") {
            computed[term] = appearance_consistency_b(in.masks.at("mask.q_bo"), in.masks.at("mask.q_con"),
                                                      in.images.at("x_ba_mix"), in.images.at("x_ra"),
                                                      in.images.at("x_rb"), PenaltyHook{}, w);
        } else if (term == "tll") {
            const BinaryMask& tl_b = in.masks.at("mask.tl_b");
            if (popcount(tl_b) == 0) {
                computed[term] = 0.0;
                notes.push_back("tll: mask.tl_b is empty, loss is 0");
            } else {
                computed[term] = traffic_light_luminance_loss(in.images.at("x_fa"),
                                                              bright_dark_masks(in.images.at("x_fa"), tl_b));
            }
        } else {  // tlc
            const Image& x_ra = in.images.at("x_ra");
            const Image& x_fa = in.images.at("x_fa");
            const BinaryMask& tl_a = in.masks.at("mask.tl_a");
            const BinaryMask& tl_b = in.masks.at("mask.tl_b");
            TlRegionMasks ma = empty_tl_masks(x_ra.height, x_ra.width);
            if (popcount(tl_a) > 0) {
                ma = split_upper_lower(tl_a);
                ma.bright = bright_region_mask(x_ra, tl_a, cfg.tl);
            }
            TlRegionMasks mb = empty_tl_masks(x_fa.height, x_fa.width);
            if (popcount(tl_b) > 0) {
                mb = split_upper_lower(tl_b);
                mb.bright = bright_dark_masks(in.images.at("x_rb"), tl_b).bright;
            }
            computed[term] = traffic_light_color_loss(x_ra, x_fa, ma, mb, cfg.tl);
        }
    }

    json info = json::object();
    if (in.has("x_fb") && in.has("mask.sl_bright") && in.has("mask.vegetation")) {
        info["sla"] =
            street_light_luminance_loss(in.images.at("x_fb"), in.masks.at("mask.sl_bright"),
                                        in.masks.at("mask.vegetation"), w);
    }
    if (in.has("gray_ra") && in.has("x_fb") && in.has("mask.traffic_light")) {
        info["tla"] = traffic_light_luminance_adjust_loss(to_grayscale(in.images.at("gray_ra")),
                                                          in.images.at("x_fb"),
                                                          in.masks.at("mask.traffic_light"), w);
    }

    json losses = json::object();
    for (const auto& [term, keys] : term_inputs) {
        if (computed.count(term) == 1) {
            losses[term] = computed.at(term);
        }
    }
    json report = {{"losses", losses}, {"info", info}, {"skipped", skipped}, {"notes", notes}};
    if (computed.size() == term_inputs.size()) {
        report["total_partial"] = aggregate(computed, w).total_partial;
    } else {
        report["total_partial"] = nullptr;
    }
    write_json(out_dir / opts.out_name, report);
}

// ----------------------------------------------------------------- schedule

struct ScheduleOpts {
    CommonOpts common;
    std::string trace;
    std::string pool_a;
    std::string pool_b;
    std::string out_name = "schedule.json";
};

/// Listing file: one `id` or `id soc` per line; '#' comments allowed.
SocSets load_pool(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open pool file '" + path.string() + "'");
    }
    std::vector<SampleIndex> index;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream ss(raw);
        std::string id;
        if (!(ss >> id)) {
            continue;
        }
        std::string tag;
        bool has_soc = false;
        if (ss >> tag) {
            if (tag != "soc") {
                throw ParseError("pool file line " + std::to_string(line) + ": expected 'soc', got '" + tag + "'");
            }
            has_soc = true;
        }
        index.push_back({id, "", "", has_soc, 0});
    }
    return build_soc_sets(index);
}

SocSets default_pool(const std::string& prefix) {
    std::vector<SampleIndex> index;
    for (int i = 0; i < 8; ++i) {
        index.push_back({prefix + std::to_string(i), "", "", i < 4, 0});
    }
    return build_soc_sets(index);
}

void run_schedule(const ScheduleOpts& opts) {
    const RunConfig cfg = effective_config(opts.common);
    const fs::path out_dir = ensure_out_dir(opts.common);
    const SocSets sets_a = opts.pool_a.empty() ? default_pool("a") : load_pool(opts.pool_a);
    const SocSets sets_b = opts.pool_b.empty() ? default_pool("b") : load_pool(opts.pool_b);
    SchedulerState sched(sets_a, sets_b, cfg.seed);

    std::ifstream in(opts.trace);
    if (!in) {
        throw IoError("cannot open trace file '" + opts.trace + "'");
    }

    json draws = json::array();
    long long count_a = 0, soc_a = 0, count_b = 0, soc_b = 0;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream ss(raw);
        std::string dom_token;
        if (!(ss >> dom_token)) {
            continue;
        }
        double z_soc = 0.0, z_global = 0.0;
        std::string extra;
        if (!(ss >> z_soc >> z_global) || (ss >> extra)) {
            throw ParseError("trace line " + std::to_string(line) + ": expected 'domain z_soc z_global'");
        }
        Domain domain;
        if (dom_token == "a" || dom_token == "A") {
            domain = Domain::A;
        } else if (dom_token == "b" || dom_token == "B") {
            domain = Domain::B;
        } else {
            throw ParseError("trace line " + std::to_string(line) + ": unknown domain '" + dom_token + "'");
        }
        if (z_soc < 0.0 || z_global < 0.0) {
            throw ParseError("trace line " + std::to_string(line) + ": loss signals must be non-negative");
        }

        sched.update(domain, z_soc, z_global);
        const Draw draw = sched.next_sample(domain);
        if (domain == Domain::A) {
            ++count_a;
            soc_a += draw.from_soc_pool ? 1 : 0;
        } else {
            ++count_b;
            soc_b += draw.from_soc_pool ? 1 : 0;
        }
        draws.push_back(json{{"line", line},
                             {"domain", domain == Domain::A ? "a" : "b"},
                             {"id", draw.id},
                             {"soc_branch", draw.soc_branch},
                             {"from_soc_pool", draw.from_soc_pool}});
    }

    auto summary = [](long long count, long long soc) {
        json s = {{"draws", count}, {"soc_pool_draws", soc}};
        if (count > 0) {
            s["soc_frequency"] = static_cast<double>(soc) / static_cast<double>(count);
        } else {
            s["soc_frequency"] = nullptr;
        }
        return s;
    };
    const json report = {{"seed", cfg.seed},
                         {"draws", draws},
                         {"summary", json{{"a", summary(count_a, soc_a)}, {"b", summary(count_b, soc_b)}}}};
    write_json(out_dir / opts.out_name, report);
}

// ----------------------------------------------------------------- apce / iou

struct PairBatchOpts {
    CommonOpts common;
    std::string left_file;   // translated / pred
    std::string right_file;  // source / gt
    std::string left_dir;
    std::string right_dir;
    int jobs = 1;
    std::string csv_path;
    std::string out_name;
};

/// Resolves single-file or directory mode into (name, left, right) path rows.
std::vector<std::array<std::string, 3>> pair_rows(const PairBatchOpts& opts, const char* left_what,
                                                  const char* right_what) {
    std::vector<std::array<std::string, 3>> rows;
    if (!opts.left_file.empty() || !opts.right_file.empty()) {
        if (opts.left_file.empty() || opts.right_file.empty()) {
            throw MissingInput(std::string("need both --") + left_what + " and --" + right_what);
        }
        rows.push_back({fs::path(opts.left_file).filename().string(), opts.left_file, opts.right_file});
        return rows;
    }
    if (opts.left_dir.empty() || opts.right_dir.empty()) {
        throw MissingInput(std::string("need --") + left_what + "/--" + right_what + " files or both directories");
    }
    for (const fs::path& left : png_listing(opts.left_dir)) {
        const fs::path right = fs::path(opts.right_dir) / left.filename();
        if (!fs::exists(right)) {
            throw MissingInput("no counterpart for '" + left.string() + "' at '" + right.string() + "'");
        }
        rows.push_back({left.filename().string(), left.string(), right.string()});
    }
    if (rows.empty()) {
        throw MissingInput("no PNG files in '" + opts.left_dir + "'");
    }
    return rows;
}

void run_apce(const PairBatchOpts& opts, bool strict) {
    RunConfig cfg = effective_config(opts.common);
    if (strict) {
        cfg.apce.strict_empty = true;
    }
    const fs::path out_dir = ensure_out_dir(opts.common);
    const auto rows = pair_rows(opts, "translated", "source");

    std::vector<double> values(rows.size(), 0.0);
    parallel_for(rows.size(), opts.jobs, [&](std::size_t i) {
        values[i] = apce(read_image(rows[i][1]), read_image(rows[i][2]), cfg.apce);
    });

    json out_rows = json::array();
    double sum = 0.0;
    std::ostringstream csv;
    csv << "file,apce\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out_rows.push_back(json{{"file", rows[i][0]}, {"apce", values[i]}});
        csv << rows[i][0] << "," << values[i] << "\n";
        sum += values[i];
    }
    const double mean = sum / static_cast<double>(rows.size());
    csv << "mean," << mean << "\n";

    const json report = {{"rows", out_rows},
                         {"aggregate", json{{"images", rows.size()}, {"mean_apce", mean}}}};
    write_json(out_dir / opts.out_name, report);
    if (!opts.csv_path.empty()) {
        write_text_atomic(opts.csv_path, csv.str());
    }
}

std::vector<CategoryId> resolve_classes(const std::string& spec, const RunConfig& cfg) {
    std::set<CategoryId> ids;
    if (spec.empty()) {
        for (const auto& [name, id] : cfg.palette) {
            if (name != "uncertain") {
                ids.insert(id);
            }
        }
    } else {
        std::stringstream ss(spec);
        std::string token;
        while (std::getline(ss, token, ',')) {
            token = trimmed(token);
            if (token.empty()) {
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(token[0]))) {
                const int id = std::stoi(token);
                if (id < 0 || id > 255) {
                    throw ParseError("--classes: id out of range '" + token + "'");
                }
                ids.insert(static_cast<CategoryId>(id));
            } else {
                const auto it = cfg.palette.find(token);
                if (it == cfg.palette.end()) {
                    throw ParseError("--classes: unknown category name '" + token + "'");
                }
                ids.insert(it->second);
            }
        }
        if (ids.empty()) {
            throw ParseError("--classes: no categories given");
        }
    }
    return {ids.begin(), ids.end()};
}

void run_iou(const PairBatchOpts& opts, const std::string& classes_spec) {
    const RunConfig cfg = effective_config(opts.common);
    const fs::path out_dir = ensure_out_dir(opts.common);
    const std::vector<CategoryId> classes = resolve_classes(classes_spec, cfg);
    const auto rows = pair_rows(opts, "pred", "gt");

    std::vector<SegReport> reports(rows.size());
    parallel_for(rows.size(), opts.jobs, [&](std::size_t i) {
        try {
            reports[i] = class_iou(read_labels(rows[i][1]), read_labels(rows[i][2]), classes);
        } catch (const NoValidPixels&) {
            throw NoValidPixels("'" + rows[i][1] + "' vs '" + rows[i][2] + "': no requested class has valid pixels");
        }
    });

    json out_rows = json::array();
    std::ostringstream csv;
    csv << "file,miou";
    for (CategoryId c : classes) {
        csv << ",class_" << static_cast<int>(c);
    }
    csv << "\n";

    double miou_sum = 0.0;
    std::map<CategoryId, std::pair<double, long long>> class_sums;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json iou_obj = json::object();
        csv << rows[i][0] << "," << reports[i].miou;
        for (CategoryId c : classes) {
            const auto it = reports[i].iou.find(c);
            if (it != reports[i].iou.end()) {
                iou_obj[std::to_string(static_cast<int>(c))] = it->second;
                auto& [s, n] = class_sums[c];
                s += it->second;
                ++n;
                csv << "," << it->second;
            } else {
                csv << ",";
            }
        }
        csv << "\n";
        out_rows.push_back(json{{"file", rows[i][0]}, {"miou", reports[i].miou}, {"iou", iou_obj}});
        miou_sum += reports[i].miou;
    }

    const double mean_miou = miou_sum / static_cast<double>(rows.size());
    json mean_class = json::object();
    csv << "mean," << mean_miou;
    for (CategoryId c : classes) {
        const auto it = class_sums.find(c);
        if (it != class_sums.end()) {
            const double mean = it->second.first / static_cast<double>(it->second.second);
            mean_class[std::to_string(static_cast<int>(c))] = mean;
            csv << "," << mean;
        } else {
            csv << ",";
        }
    }
    csv << "\n";

    const json report = {{"rows", out_rows},
                         {"aggregate", json{{"images", rows.size()},
                                            {"mean_miou", mean_miou},
                                            {"mean_iou", mean_class}}}};
    write_json(out_dir / opts.out_name, report);
    if (!opts.csv_path.empty()) {
        write_text_atomic(opts.csv_path, csv.str());
    }
}

// ----------------------------------------------------------------- convert-light

struct ConvertOpts {
    CommonOpts common;
    std::string image;
    std::string image_dir;
    int jobs = 1;
};

void run_convert_light(const ConvertOpts& opts) {
    const RunConfig cfg = effective_config(opts.common);
    const fs::path out_dir = ensure_out_dir(opts.common);

    std::vector<fs::path> inputs;
    if (!opts.image.empty()) {
        inputs.emplace_back(opts.image);
    } else if (!opts.image_dir.empty()) {
        inputs = png_listing(opts.image_dir);
        if (inputs.empty()) {
            throw MissingInput("no PNG files in '" + opts.image_dir + "'");
        }
    } else {
        throw MissingInput("need --image or --image-dir");
    }

    parallel_for(inputs.size(), opts.jobs, [&](std::size_t i) {
        const Image converted = convert_color(read_image(inputs[i].string()), cfg.tl);
        write_image(converted, (out_dir / inputs[i].filename()).string());
    });
}

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "Config file (key = value document)")
        ->envname("FOALKIT_CONFIG");
    sub->add_option("--out-dir", opts.out_dir, "Output directory (created if missing)");
    sub->add_option("--seed", opts.seed, "Override the config seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foalkit: deterministic mixing, loss, scheduling, and metric tools"};
    app.require_subcommand(1);

    MixOpts mix_opts;
    CLI::App* mix = app.add_subcommand("mix", "Compose an occlusion-aware object mix");
    add_common(mix, mix_opts.common);
    mix->add_option("--domain", mix_opts.domain, "a (color) or b (NTIR)")
        ->required()
        ->check(CLI::IsMember({"a", "b"}));
    mix->add_option("--real-image", mix_opts.real_image, "Real image PNG")->required();
    mix->add_option("--fake-image", mix_opts.fake_image, "Translated image PNG")->required();
    mix->add_option("--real-labels", mix_opts.real_labels, "Real label map PNG")->required();
    mix->add_option("--fake-labels", mix_opts.fake_labels, "Translated pseudo-label PNG")->required();
    mix->callback([&] { run_mix(mix_opts); });

    LossOpts loss_opts;
    CLI::App* loss = app.add_subcommand("loss", "Evaluate the loss suite from a manifest");
    add_common(loss, loss_opts.common);
    loss->add_option("--manifest", loss_opts.manifest, "key = path manifest of inputs")->required();
    loss->add_option("--out", loss_opts.out_name, "Report filename inside --out-dir");
    loss->callback([&] { run_loss(loss_opts); });

    ScheduleOpts sched_opts;
    CLI::App* sched = app.add_subcommand("schedule", "Replay a feedback trace");
    add_common(sched, sched_opts.common);
    sched->add_option("--trace", sched_opts.trace, "Trace file: domain z_soc z_global per line")->required();
    sched->add_option("--pool-a", sched_opts.pool_a, "Domain A pool listing (id [soc] per line)");
    sched->add_option("--pool-b", sched_opts.pool_b, "Domain B pool listing");
    sched->add_option("--out", sched_opts.out_name, "Report filename inside --out-dir");
    sched->callback([&] { run_schedule(sched_opts); });

    PairBatchOpts apce_opts;
    apce_opts.out_name = "apce.json";
    bool strict_apce = false;
    CLI::App* apce_cmd = app.add_subcommand("apce", "Edge-precision metric");
    add_common(apce_cmd, apce_opts.common);
    apce_cmd->add_option("--translated", apce_opts.left_file, "Translated image PNG");
    apce_cmd->add_option("--source", apce_opts.right_file, "Source image PNG");
    apce_cmd->add_option("--translated-dir", apce_opts.left_dir, "Directory of translated PNGs");
    apce_cmd->add_option("--source-dir", apce_opts.right_dir, "Directory of source PNGs (matched by name)");
    apce_cmd->add_flag("--strict-apce", strict_apce, "Score empty edge sets as 0 instead of 1");
    apce_cmd->add_option("--jobs", apce_opts.jobs, "Parallel workers for batch mode");
    apce_cmd->add_option("--csv", apce_opts.csv_path, "Also write a CSV report to this path");
    apce_cmd->add_option("--out", apce_opts.out_name, "Report filename inside --out-dir");
    apce_cmd->callback([&] { run_apce(apce_opts, strict_apce); });

    PairBatchOpts iou_opts;
    iou_opts.out_name = "iou.json";
    std::string classes_spec;
    CLI::App* iou_cmd = app.add_subcommand("iou", "Per-class segmentation IoU");
    add_common(iou_cmd, iou_opts.common);
    iou_cmd->add_option("--pred", iou_opts.left_file, "Predicted label map PNG");
    iou_cmd->add_option("--gt", iou_opts.right_file, "Ground-truth label map PNG");
    iou_cmd->add_option("--pred-dir", iou_opts.left_dir, "Directory of predicted label maps");
    iou_cmd->add_option("--gt-dir", iou_opts.right_dir, "Directory of ground-truth label maps");
    iou_cmd->add_option("--classes", classes_spec, "Comma list of ids or palette names (default: all)");
    iou_cmd->add_option("--jobs", iou_opts.jobs, "Parallel workers for batch mode");
    iou_cmd->add_option("--csv", iou_opts.csv_path, "Also write a CSV report to this path");
    iou_cmd->add_option("--out", iou_opts.out_name, "Report filename inside --out-dir");
    iou_cmd->callback([&] { run_iou(iou_opts, classes_spec); });

    ConvertOpts conv_opts;
    CLI::App* conv = app.add_subcommand("convert-light", "Red/green conversion of traffic-light crops");
    add_common(conv, conv_opts.common);
    conv->add_option("--image", conv_opts.image, "Instance crop PNG");
    conv->add_option("--image-dir", conv_opts.image_dir, "Directory of instance crops");
    conv->add_option("--jobs", conv_opts.jobs, "Parallel workers for batch mode");
    conv->callback([&] { run_convert_light(conv_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
