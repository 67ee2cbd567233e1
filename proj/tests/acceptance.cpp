// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.
//
// Release gate: one check per shipped guarantee, each printing a single
// [PASS]/[FAIL] line with its pinned tolerance. Exit status 0 only when
// every check passes. All fixtures are synthetic and seeded; no check
// depends on wall-clock state, file-system layout, or prior runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "foalkit/color.hpp"
#include "foalkit/config.hpp"
#include "foalkit/edges.hpp"
#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/losses.hpp"
#include "foalkit/mask_ops.hpp"
#include "foalkit/metrics.hpp"
#include "foalkit/oamix.hpp"
#include "foalkit/png_io.hpp"
#include "foalkit/scheduler.hpp"
#include "foalkit/trafficlight.hpp"

#include "oracles.hpp"

using namespace foalkit;
namespace fs = std::filesystem;

namespace {

constexpr double kLossOracleTol = 1e-6;
constexpr double kZeroTruthTol = 1e-9;
constexpr double kAlaMeanTol = 1e-6;
constexpr double kHueRoundTripTol = 1.0 / 360.0;
constexpr double kIouOracleTol = 1e-12;
constexpr double kLossSuiteBudgetSec = 5.0;
constexpr double kMixSuiteBudgetSec = 30.0;
constexpr double kTotalBudgetSec = 60.0;

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BinaryMask rows_mask(int h, int w, int from, int to) {
    BinaryMask m(h, w);
    for (int y = from; y < to; ++y) {
        for (int x = 0; x < w; ++x) {
            m.set(y, x, true);
        }
    }
    return m;
}

BinaryMask nonempty(BinaryMask m) {
    if (popcount(m) == 0) {
        m.set(0, 0, true);
    }
    return m;
}

// ------------------------------------------------------------ loss oracles

bool check_loss_oracle_suite(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const LossWeights w;
    const TlColorParams tl_params;
    oracle::Rng rng(0xF0A1);
    double max_diff = 0.0;
    const auto track = [&](double got, double want) { max_diff = std::max(max_diff, std::fabs(got - want)); };

    for (int trial = 0; trial < 20; ++trial) {
        const Image x3a = oracle::random_image(rng, 8, 8, 3);
        const Image x3b = oracle::random_image(rng, 8, 8, 3);
        const Image x1a = oracle::random_image(rng, 8, 8, 1);
        const Image x1b = oracle::random_image(rng, 8, 8, 1);
        const Image gm = oracle::random_image(rng, 8, 8, 1);
        const Image em = oracle::random_image(rng, 8, 8, 1);
        const BinaryMask m = nonempty(oracle::random_mask(rng, 8, 8, 0.5));
        const BinaryMask sl = nonempty(oracle::random_mask(rng, 8, 8, 0.3));
        const BinaryMask veg = nonempty(oracle::random_mask(rng, 8, 8, 0.4));
        const BinaryMask tl = nonempty(oracle::random_mask(rng, 8, 8, 0.4));
        const BinaryMask q_con = nonempty(oracle::random_mask(rng, 8, 8, 0.5));

        track(midf(m, x3a, x3b, w), oracle::midf(m, x3a, x3b, w.lambda_sl1));
        track(street_light_luminance_loss(x1a, sl, veg, w), oracle::sla(x1a, sl, veg, w.theta_tem));
        track(traffic_light_luminance_adjust_loss(x1a, x1b, tl, w), oracle::tla(x1a, x1b, tl, w.theta_sim));
        track(artifact_bias_correction_loss(x1b, sl, veg, x1a, tl, gm, em, PenaltyHook{}, w),
              oracle::sla(x1b, sl, veg, w.theta_tem) + oracle::tla(x1a, x1b, tl, w.theta_sim) +
                  w.lambda_sga * oracle::sga_standin(gm, em));
        track(color_bias_correction_loss(m, x3a, x3b, w), oracle::midf(m, x3a, x3b, w.lambda_sl1));
        track(appearance_consistency_a(m, x1a, x1b, w), oracle::midf(m, x1a, x1b, w.lambda_sl1));
        track(appearance_consistency_b(m, q_con, x3a, x3b, x1a, PenaltyHook{}, w),
              oracle::midf(m, x3a, x3b, w.lambda_sl1) +
                  oracle::cgr_standin(oracle::apply_mask(x3a, q_con), oracle::apply_mask(x1a, q_con)));

        const TlRegionMasks bd = bright_dark_masks(x3a, tl);
        track(traffic_light_luminance_loss(x3a, bd), oracle::tll(x3a, bd.bright, bd.dark));

        TlRegionMasks ra;
        ra.upper = nonempty(oracle::random_mask(rng, 8, 8, 0.3));
        ra.lower = nonempty(oracle::random_mask(rng, 8, 8, 0.3));
        ra.bright = mask_or(ra.upper, ra.lower);
        ra.dark = BinaryMask(8, 8);
        TlRegionMasks rb;
        rb.upper = nonempty(oracle::random_mask(rng, 8, 8, 0.3));
        rb.lower = nonempty(oracle::random_mask(rng, 8, 8, 0.3));
        rb.bright = mask_or(rb.upper, rb.lower);
        rb.dark = BinaryMask(8, 8);
        track(traffic_light_color_loss(x3a, x3b, ra, rb, tl_params),
              oracle::tlc(x3a, x3b, mask_and(ra.upper, ra.bright), mask_and(ra.lower, ra.bright),
                          mask_and(rb.upper, rb.bright), mask_and(rb.lower, rb.bright), tl_params.tau));

        std::map<std::string, double> terms;
        double hand = 0.0;
        for (const std::string& key : aggregate_leaf_terms()) {
            terms[key] = rng.unit();
            hand += terms[key];
        }
        track(aggregate(terms, w).total_partial, hand);
    }

    const double elapsed = seconds_since(t0);
    std::ostringstream ss;
    ss << "20 fixtures x 9 loss forms, max |diff| = " << max_diff << ", " << elapsed << " s";
    detail = ss.str();
    return max_diff <= kLossOracleTol && elapsed < kLossSuiteBudgetSec;
}

bool check_zero_at_truth(std::string& detail) {
    const LossWeights w;
    const TlColorParams tl_params;
    oracle::Rng rng(0x02E0);
    double max_abs = 0.0;
    const auto track = [&](double v) { max_abs = std::max(max_abs, std::fabs(v)); };

    const Image x3 = oracle::random_image(rng, 12, 12, 3);
    const Image x1 = oracle::random_image(rng, 12, 12, 1);
    const BinaryMask m = nonempty(oracle::random_mask(rng, 12, 12, 0.5));
    const BinaryMask q_con = nonempty(oracle::random_mask(rng, 12, 12, 0.5));

    track(midf(m, x3, x3, w));
    track(color_bias_correction_loss(m, x3, x3, w));
    track(appearance_consistency_a(m, x1, x1, w));
    track(appearance_consistency_b(m, q_con, x3, x3, to_grayscale(x3), PenaltyHook{}, w));

    Image truth(12, 12, 1, 0.5);
    const BinaryMask sl = rows_mask(12, 12, 0, 3);
    const BinaryMask veg = rows_mask(12, 12, 9, 12);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 12; ++x) {
            truth.at(y, x) = 0.9;
        }
    }
    for (int y = 9; y < 12; ++y) {
        for (int x = 0; x < 12; ++x) {
            truth.at(y, x) = 0.2;
        }
    }
    track(street_light_luminance_loss(truth, sl, veg, w));

    Image patterned = x1;
    const BinaryMask tl = rows_mask(12, 12, 4, 7);
    track(traffic_light_luminance_adjust_loss(patterned, patterned, tl, w));
    track(artifact_bias_correction_loss(truth, sl, veg, patterned, tl, x1, x1, PenaltyHook{}, w) -
          traffic_light_luminance_adjust_loss(patterned, truth, tl, w));

    TlRegionMasks lum;
    lum.bright = rows_mask(12, 12, 0, 2);
    lum.dark = rows_mask(12, 12, 2, 4);
    Image lamp(12, 12, 1, 0.3);
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 12; ++x) {
            lamp.at(y, x) = 0.8;
        }
    }
    track(traffic_light_luminance_loss(lamp, lum));

    TlRegionMasks sub;
    sub.upper = rows_mask(12, 12, 0, 2);
    sub.lower = rows_mask(12, 12, 2, 4);
    sub.bright = rows_mask(12, 12, 0, 4);
    sub.dark = BinaryMask(12, 12);
    track(traffic_light_color_loss(x3, x3, sub, sub, tl_params));

    std::ostringstream ss;
    ss << "8 truth configurations, max |loss| = " << max_abs;
    detail = ss.str();
    return max_abs <= kZeroTruthTol;
}

// ------------------------------------------------------------ mixing

LabelMap street_labels(oracle::Rng& rng, int n) {
    LabelMap labels = oracle::random_labels(rng, n, n);
    for (int y = n - 8; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            labels.set(y, x, 0);
        }
    }
    return labels;
}

bool check_oamix_invariants(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const CategoryConfig cfg = default_config().categories;
    oracle::Rng rng(0x0A31);
    const int n = 32;
    long long regions_seen = 0;
    long long violations = 0;

    for (int trial = 0; trial < 500; ++trial) {
        const LabelMap real_labels = street_labels(rng, n);
        const LabelMap fake_labels = street_labels(rng, n);
        const auto [obj, road] = object_and_road_masks(real_labels, cfg);
        const std::vector<ConnectedRegion> regions = select_mix_regions(fake_labels, obj, road, cfg);
        const long long min_area = effective_area_threshold(cfg, n, n);

        BinaryMask q_o(n, n);
        for (const ConnectedRegion& region : regions) {
            ++regions_seen;
            if (region.area <= min_area) ++violations;
            if (intersects(region.mask, obj)) ++violations;
            if (cfg.vehicle_set.count(region.category) == 1 && !intersects(region.mask, road)) ++violations;
            if (popcount(region.mask) != region.area) ++violations;
            q_o = mask_or(q_o, region.mask);
        }
        const BinaryMask q_f = flip_h(q_o);

        const Image x_fa = oracle::random_image(rng, n, n, 3);
        const Image x_ra = oracle::random_image(rng, n, n, 3);
        const MixResult res_a = compose_mix_a(x_fa, x_ra, q_o, q_f);

        if (!masks_equal(res_a.q_orig, q_o) || !masks_equal(res_a.q_flip, q_f)) ++violations;
        if (!masks_equal(res_a.context, mask_not(mask_or(q_o, q_f)))) ++violations;
        if (popcount(mask_and(res_a.context, mask_or(q_o, q_f))) != 0) ++violations;
        if (popcount(res_a.context) + popcount(mask_or(q_o, q_f)) != n * n) ++violations;
        if (popcount(mask_and(q_o, obj)) != 0) ++violations;

        bool pixels_ok = true;
        for (int y = 0; y < n && pixels_ok; ++y) {
            for (int x = 0; x < n && pixels_ok; ++x) {
                for (int c = 0; c < 3; ++c) {
                    const double want = q_o.at(y, x)   ? x_fa.at(y, x, c)
                                        : q_f.at(y, x) ? x_fa.at(y, n - 1 - x, c)
                                                       : x_ra.at(y, x, c);
                    if (res_a.mixed.at(y, x, c) != want) {
                        pixels_ok = false;
                        break;
                    }
                }
            }
        }
        if (!pixels_ok) ++violations;

        const Image x_fb = oracle::random_image(rng, n, n, 1);
        const Image x_rb = oracle::random_image(rng, n, n, 1);
        const MixResult res_b = compose_mix_b(x_fb, x_rb, q_o, q_f, road);
        const Image obj_img = compose_object_image(x_fb, q_o, q_f);
        const BinaryMask pasted = mask_or(q_o, q_f);
        bool b_ok = true;
        for (int y = 0; y < n && b_ok; ++y) {
            for (int x = 0; x < n; ++x) {
                const double want = pasted.at(y, x)
                                        ? std::clamp(res_b.ala_factor * obj_img.at(y, x), 0.0, 1.0)
                                        : x_rb.at(y, x);
                if (res_b.mixed.at(y, x) != want) {
                    b_ok = false;
                    break;
                }
            }
        }
        if (!b_ok) ++violations;
    }

    const double elapsed = seconds_since(t0);
    std::ostringstream ss;
    ss << "500 trials, " << regions_seen << " pasted regions, " << violations << " violations, " << elapsed
       << " s";
    detail = ss.str();
    return violations == 0 && elapsed < kMixSuiteBudgetSec;
}

bool check_ala_property(std::string& detail) {
    oracle::Rng rng(0xA7A0);
    const int n = 32;
    double max_diff = 0.0;

    for (int trial = 0; trial < 100; ++trial) {
        const Image x_fb = oracle::random_image(rng, n, n, 1);
        const Image x_rb = oracle::random_image(rng, n, n, 1);
        const BinaryMask road = rows_mask(n, n, n - 8, n);
        const int top = 2 + rng.below(16);
        const int left = 2 + rng.below(16);
        BinaryMask q_o(n, n);
        for (int y = top; y < top + 3; ++y) {
            for (int x = left; x < left + 3; ++x) {
                q_o.set(y, x, true);
            }
        }
        const BinaryMask q_f = flip_h(q_o);
        const MixResult res = compose_mix_b(x_fb, x_rb, q_o, q_f, road);

        const Image obj_img = compose_object_image(x_fb, q_o, q_f);
        const BinaryMask pasted = mask_or(q_o, q_f);
        double sum = 0.0;
        long long count = 0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                if (pasted.at(y, x)) {
                    sum += res.ala_factor * obj_img.at(y, x);
                    ++count;
                }
            }
        }
        const double pre_clamp_mean = sum / static_cast<double>(count);
        double road_sum = 0.0;
        long long road_count = 0;
        for (int y = n - 8; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                road_sum += x_rb.at(y, x);
                ++road_count;
            }
        }
        max_diff = std::max(max_diff, std::fabs(pre_clamp_mean - road_sum / static_cast<double>(road_count)));
    }

    Image flat_fb(n, n, 1, 0.5);
    Image flat_rb(n, n, 1, 0.5);
    BinaryMask q_o = rows_mask(n, n, 4, 6);
    const MixResult fixed = compose_mix_b(flat_fb, flat_rb, q_o, flip_h(q_o), rows_mask(n, n, n - 8, n));
    const bool fixed_point = fixed.ala_factor == 1.0;
    bool fixed_pixels = true;
    for (double v : fixed.mixed.data) {
        if (v != 0.5) {
            fixed_pixels = false;
        }
    }

    std::ostringstream ss;
    ss << "100 randomized cases, max |pre-clamp mean - road mean| = " << max_diff
       << (fixed_point && fixed_pixels ? ", factor-1 fixed point exact" : ", factor-1 fixed point VIOLATED");
    detail = ss.str();
    return max_diff <= kAlaMeanTol && fixed_point && fixed_pixels;
}

bool check_connected_components(std::string& detail) {
    oracle::Rng rng(0xCC01);
    long long mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryMask m = oracle::random_mask(rng, 16, 16, 0.25 + 0.5 * rng.unit());
        std::vector<int> labels;
        const int n_oracle = oracle::flood_fill_labels(m, labels);
        const std::vector<ConnectedRegion> regions = connected_components(m, 7);
        if (static_cast<int>(regions.size()) != n_oracle) {
            ++mismatches;
            continue;
        }
        for (const ConnectedRegion& region : regions) {
            int label = -1;
            long long area = 0;
            int top = 16, left = 16, bottom = -1, right = -1;
            bool consistent = true;
            for (int y = 0; y < 16; ++y) {
                for (int x = 0; x < 16; ++x) {
                    if (!region.mask.at(y, x)) {
                        continue;
                    }
                    ++area;
                    top = std::min(top, y);
                    left = std::min(left, x);
                    bottom = std::max(bottom, y);
                    right = std::max(right, x);
                    const int l = labels[static_cast<std::size_t>(y) * 16 + x];
                    if (label == -1) {
                        label = l;
                    } else if (l != label) {
                        consistent = false;
                    }
                }
            }
            long long oracle_area = 0;
            for (int v : labels) {
                if (v == label) {
                    ++oracle_area;
                }
            }
            if (!consistent || label == -1 || area != region.area || oracle_area != region.area ||
                region.bbox.top != top || region.bbox.left != left ||
                region.bbox.height != bottom - top + 1 || region.bbox.width != right - left + 1 ||
                region.category != 7) {
                ++mismatches;
            }
        }
    }
    std::ostringstream ss;
    ss << "100 random 16x16 masks vs flood-fill oracle, " << mismatches << " mismatches";
    detail = ss.str();
    return mismatches == 0;
}

// ------------------------------------------------------------ scheduler

bool check_scheduler_replay(std::string& detail) {
    std::vector<SampleIndex> idx_a, idx_b;
    for (int i = 0; i < 16; ++i) {
        idx_a.push_back({"a" + std::to_string(i), "", "", i % 3 == 0, 0});
    }
    for (int i = 0; i < 10; ++i) {
        idx_b.push_back({"b" + std::to_string(i), "", "", i % 2 == 0, 0});
    }
    const SocSets sets_a = build_soc_sets(idx_a);
    const SocSets sets_b = build_soc_sets(idx_b);
    const std::set<std::string> soc_a(sets_a.soc_ids.begin(), sets_a.soc_ids.end());
    const std::set<std::string> soc_b(sets_b.soc_ids.begin(), sets_b.soc_ids.end());
    const std::set<std::string> all_a(sets_a.all_ids.begin(), sets_a.all_ids.end());
    const std::set<std::string> all_b(sets_b.all_ids.begin(), sets_b.all_ids.end());

    struct TraceLine {
        Domain domain;
        double z_soc;
        double z_global;
    };
    oracle::Rng rng(0x5EED);
    std::vector<TraceLine> trace;
    for (int i = 0; i < 1000; ++i) {
        TraceLine line;
        line.domain = rng.below(2) == 0 ? Domain::A : Domain::B;
        if (i % 7 == 0) {
            line.z_soc = line.z_global = rng.unit();  // tie -> full pool
        } else if (i % 11 == 0) {
            line.z_soc = line.z_global = 0.0;
        } else {
            line.z_soc = rng.unit();
            line.z_global = rng.unit();
        }
        trace.push_back(line);
    }

    long long violations = 0;
    SchedulerState sched(sets_a, sets_b, 99);
    SchedulerState twin(sets_a, sets_b, 99);
    for (const TraceLine& line : trace) {
        sched.update(line.domain, line.z_soc, line.z_global);
        twin.update(line.domain, line.z_soc, line.z_global);
        const Draw draw = sched.next_sample(line.domain);
        const Draw other = twin.next_sample(line.domain);
        const bool expected_branch = line.z_soc > line.z_global;
        const auto& soc = line.domain == Domain::A ? soc_a : soc_b;
        const auto& all = line.domain == Domain::A ? all_a : all_b;
        if (draw.soc_branch != expected_branch) ++violations;
        if (draw.from_soc_pool != (expected_branch && !soc.empty())) ++violations;
        if (draw.from_soc_pool ? soc.count(draw.id) == 0 : all.count(draw.id) == 0) ++violations;
        if (other.id != draw.id || other.soc_branch != draw.soc_branch ||
            other.from_soc_pool != draw.from_soc_pool) {
            ++violations;
        }
    }

    SchedulerState greedy(sets_a, sets_b, 5);
    long long soc_draws = 0;
    for (int i = 0; i < 200; ++i) {
        greedy.update(Domain::A, 1.0, 0.5);
        soc_draws += greedy.next_sample(Domain::A).from_soc_pool ? 1 : 0;
    }
    const double frequency = static_cast<double>(soc_draws) / 200.0;

    std::ostringstream ss;
    ss << "1000-line adversarial trace (ties included), " << violations
       << " decision/pool/determinism violations; persistent-deficit frequency = " << frequency;
    detail = ss.str();
    return violations == 0 && frequency == 1.0;
}

// ------------------------------------------------------------ traffic light color

bool check_color_machinery(std::string& detail) {
    const TlColorParams params;
    const bool beta_exact = tl_beta_weight(0.15, 0.05, 0.05) == 10.0;

    oracle::Rng rng(0xC010);
    double max_sv_diff = 0.0;
    double max_hue_diff = 0.0;
    long long converted_pixels = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const bool squat = trial % 2 == 0;
        const int h = squat ? 2 + rng.below(2) : 6 + rng.below(3);
        const int w = squat ? 3 * h : 2;
        Image crop(h, w, 3);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double v = 0.5 + 0.5 * rng.unit();
                const double s = 0.5 + 0.5 * rng.unit();
                crop.at(y, x, 0) = v;
                crop.at(y, x, 1) = v * (1.0 - s);
                crop.at(y, x, 2) = v * (1.0 - s) * rng.unit();
            }
        }
        const bool flipped = static_cast<double>(h) / static_cast<double>(w) > params.aspect_threshold;
        const Image once = convert_color(crop, params);
        const Image twice = convert_color(once, params);
        for (int y = 0; y < h; ++y) {
            const int sy = flipped ? h - 1 - y : y;
            for (int x = 0; x < w; ++x) {
                const Hsv before = rgb_to_hsv(crop.at(sy, x, 0), crop.at(sy, x, 1), crop.at(sy, x, 2));
                const Hsv after = rgb_to_hsv(once.at(y, x, 0), once.at(y, x, 1), once.at(y, x, 2));
                max_sv_diff = std::max({max_sv_diff, std::fabs(before.s - after.s), std::fabs(before.v - after.v)});
                if (once.at(y, x, 0) != crop.at(sy, x, 0) || once.at(y, x, 1) != crop.at(sy, x, 1)) {
                    ++converted_pixels;
                }
                const Hsv back = rgb_to_hsv(twice.at(sy, x, 0), twice.at(sy, x, 1), twice.at(sy, x, 2));
                const double dh = std::fabs(back.h - before.h);
                max_hue_diff = std::max(max_hue_diff, std::min(dh, 1.0 - dh));
            }
        }
    }

    std::ostringstream ss;
    ss << "beta spot check " << (beta_exact ? "exact" : "WRONG") << "; 50 crops, " << converted_pixels
       << " converted pixels, max |dS|,|dV| = " << max_sv_diff << ", max round-trip hue error = "
       << max_hue_diff;
    detail = ss.str();
    return beta_exact && max_sv_diff == 0.0 && max_hue_diff <= kHueRoundTripTol && converted_pixels > 0;
}

// ------------------------------------------------------------ metrics

bool check_metrics(std::string& detail) {
    const ApceConfig cfg;
    oracle::Rng rng(0x3E7C);

    bool identity_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        const int c = trial % 2 == 0 ? 3 : 1;
        const Image x = oracle::random_image(rng, 24, 24, c);
        if (apce(x, to_grayscale(x), cfg) != 1.0) {
            identity_ok = false;
        }
    }

    long long iou_mismatches = 0;
    std::vector<CategoryId> classes;
    for (CategoryId c : {0, 1, 2, 3, 4, 5, 6, 9, 10, 11, 12}) {
        classes.push_back(c);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const LabelMap pred = oracle::random_labels(rng, 16, 16);
        LabelMap gt = oracle::random_labels(rng, 16, 16);
        bool any_valid = false;
        for (int y = 0; y < 16 && !any_valid; ++y) {
            for (int x = 0; x < 16; ++x) {
                if (gt.at(y, x) != gt.uncertain_id) {
                    any_valid = true;
                    break;
                }
            }
        }
        if (!any_valid) {
            gt.set(0, 0, 1);
        }
        const SegReport rep = class_iou(pred, gt, classes);
        const std::map<CategoryId, double> want = oracle::confusion_iou(pred, gt, classes);
        if (rep.iou.size() != want.size()) {
            ++iou_mismatches;
            continue;
        }
        double mean = 0.0;
        for (const auto& [c, v] : want) {
            const auto it = rep.iou.find(c);
            if (it == rep.iou.end() || std::fabs(it->second - v) > kIouOracleTol) {
                ++iou_mismatches;
            }
            mean += v;
        }
        if (!want.empty() && std::fabs(rep.miou - mean / static_cast<double>(want.size())) > kIouOracleTol) {
            ++iou_mismatches;
        }
    }

    Image scene(64, 64, 1, 0.0);
    for (int x0 = 4; x0 + 4 <= 30; x0 += 8) {
        for (int y = 0; y < 64; ++y) {
            for (int x = x0; x < x0 + 4; ++x) {
                scene.at(y, x) = 1.0;
            }
        }
    }
    for (int y0 = 4; y0 + 4 <= 60; y0 += 8) {
        for (int y = y0; y < y0 + 4; ++y) {
            for (int x = 36; x < 62; ++x) {
                scene.at(y, x) = 1.0;
            }
        }
    }
    const double a_self = apce(scene, scene, cfg);
    const double a_soft = apce(gaussian_blur(scene, 2.4, 6), scene, cfg);
    const double a_softer = apce(gaussian_blur(scene, 2.8, 7), scene, cfg);
    const bool blur_ok = a_self == 1.0 && a_soft < a_self && a_softer < a_soft;

    std::ostringstream ss;
    ss << "identity apce " << (identity_ok ? "exact for 20 images" : "VIOLATED") << "; iou oracle mismatches = "
       << iou_mismatches << "; blur sequence 1.0 > " << a_soft << " > " << a_softer
       << (blur_ok ? "" : " NOT STRICTLY DECREASING");
    detail = ss.str();
    return identity_ok && iou_mismatches == 0 && blur_ok;
}

// ------------------------------------------------------------ CLI determinism

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t tree_hash(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const fs::path& file : files) {
        h = fnv1a(fs::relative(file, root).string(), h);
        std::ifstream in(file, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        h = fnv1a(ss.str(), h);
    }
    return h;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FOALKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool run_pipeline(const fs::path& fixtures, const fs::path& out) {
    fs::create_directories(out);
    const auto arg = [&](const char* name) { return (fixtures / name).string(); };
    std::vector<std::string> commands = {
        "mix --domain a --real-image '" + arg("real3.png") + "' --fake-image '" + arg("fake3.png") +
            "' --real-labels '" + arg("rl.png") + "' --fake-labels '" + arg("fl.png") + "' --seed 17 --out-dir '" +
            (out / "mix_a").string() + "'",
        "mix --domain b --real-image '" + arg("real1.png") + "' --fake-image '" + arg("fake1.png") +
            "' --real-labels '" + arg("rl.png") + "' --fake-labels '" + arg("fl.png") + "' --seed 17 --out-dir '" +
            (out / "mix_b").string() + "'",
        "loss --manifest '" + arg("manifest.txt") + "' --out-dir '" + out.string() + "'",
        "schedule --trace '" + arg("trace.txt") + "' --seed 17 --out-dir '" + out.string() + "'",
        "apce --translated '" + arg("real3.png") + "' --source '" + arg("real3.png") + "' --out-dir '" +
            out.string() + "' --csv '" + (out / "apce.csv").string() + "'",
        "iou --pred '" + arg("fl.png") + "' --gt '" + arg("rl.png") + "' --out-dir '" + out.string() +
            "' --csv '" + (out / "iou.csv").string() + "'",
        "convert-light --image '" + arg("lamp.png") + "' --out-dir '" + (out / "lights").string() + "'",
    };
    for (const std::string& command : commands) {
        if (run_cli(command) != 0) {
            return false;
        }
    }
    return true;
}

bool check_cli_determinism(std::string& detail) {
    const fs::path base = fs::temp_directory_path() / "foalkit_acceptance";
    fs::remove_all(base);
    const fs::path fixtures = base / "fixtures";
    fs::create_directories(fixtures);

    oracle::Rng rng(0xC11D);
    const int n = 32;
    write_image(oracle::random_image(rng, n, n, 3), (fixtures / "real3.png").string());
    write_image(oracle::random_image(rng, n, n, 3), (fixtures / "fake3.png").string());
    write_image(oracle::random_image(rng, n, n, 1), (fixtures / "real1.png").string());
    write_image(oracle::random_image(rng, n, n, 1), (fixtures / "fake1.png").string());

    LabelMap rl(n, n, 1);
    LabelMap fl(n, n, 1);
    for (int y = n - 8; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            rl.set(y, x, 0);
            fl.set(y, x, 0);
        }
    }
    for (int y = 4; y < 8; ++y) {
        for (int x = 4; x < 8; ++x) {
            fl.set(y, x, 10);
        }
    }
    for (int y = n - 7; y < n - 3; ++y) {
        for (int x = 12; x < 16; ++x) {
            fl.set(y, x, 9);
        }
    }
    write_labels(rl, (fixtures / "rl.png").string());
    write_labels(fl, (fixtures / "fl.png").string());

    Image lamp(2, 6, 3);
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 6; ++x) {
            lamp.at(y, x, 0) = 0.9;
            lamp.at(y, x, 1) = 0.15;
            lamp.at(y, x, 2) = 0.1;
        }
    }
    write_image(lamp, (fixtures / "lamp.png").string());

    const BinaryMask half = rows_mask(n, n, 0, 16);
    write_mask(half, (fixtures / "soc.png").string());
    {
        std::ofstream manifest(fixtures / "manifest.txt");
        manifest << "x_ra = " << (fixtures / "real3.png").string() << "\n";
        manifest << "x_rec = " << (fixtures / "fake3.png").string() << "\n";
        manifest << "mask.soc = " << (fixtures / "soc.png").string() << "\n";
    }
    {
        std::ofstream trace(fixtures / "trace.txt");
        for (int i = 0; i < 40; ++i) {
            trace << (i % 2 == 0 ? "a " : "b ") << 0.25 * (i % 5) << " " << 0.2 * ((i + 2) % 4) << "\n";
        }
    }

    const fs::path run1 = base / "run1";
    const fs::path run2 = base / "run2";
    if (!run_pipeline(fixtures, run1) || !run_pipeline(fixtures, run2)) {
        detail = "a pipeline invocation exited nonzero";
        return false;
    }
    const std::uint64_t h1 = tree_hash(run1);
    const std::uint64_t h2 = tree_hash(run2);

    std::ostringstream ss;
    ss << "7 subcommands rerun with identical config+seed, tree hashes " << std::hex << h1 << " vs " << h2;
    detail = ss.str();
    return h1 == h2;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Check> checks = {
        {"loss-oracle-suite", check_loss_oracle_suite},
        {"zero-at-truth", check_zero_at_truth},
        {"oamix-invariants", check_oamix_invariants},
        {"ala-property", check_ala_property},
        {"connected-components", check_connected_components},
        {"scheduler-replay", check_scheduler_replay},
        {"traffic-light-color", check_color_machinery},
        {"metrics", check_metrics},
        {"cli-determinism", check_cli_determinism},
    };

    int failed = 0;
    for (const Check& check : checks) {
        std::string det;
        bool ok = false;
        try {
            ok = check.run(det);
        } catch (const std::exception& e) {
            det = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", check.name.c_str(), det.c_str());
        if (!ok) {
            ++failed;
        }
    }

    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < kTotalBudgetSec;
    std::printf("[%s] wall-clock: %.2f s (budget %.0f s)\n", in_budget ? "PASS" : "FAIL", elapsed,
                kTotalBudgetSec);
    if (!in_budget) {
        ++failed;
    }
    std::printf("ACCEPTANCE: %zu/%zu checks passed\n", checks.size() + 1 - failed, checks.size() + 1);
    return failed == 0 ? 0 : 1;
}
