// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include <doctest.h>

#include <random>

#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/mask_ops.hpp"
#include "foalkit/oamix.hpp"
#include "oracles.hpp"

using namespace foalkit;

namespace {

CategoryConfig street_config() {
    CategoryConfig cfg;
    cfg.soc_set = {9, 10, 11};
    cfg.vehicle_set = {5, 6, 7, 8, 9};
    cfg.object_set = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    cfg.road_id = 0;
    cfg.vegetation_id = 3;
    cfg.traffic_light_id = 10;
    cfg.streetlight_id = 12;
    cfg.area_threshold = 64;
    return cfg;
}

void paint(LabelMap& labels, int top, int left, int h, int w, CategoryId c) {
    for (int y = top; y < top + h; ++y) {
        for (int x = left; x < left + w; ++x) {
            labels.set(y, x, c);
        }
    }
}

}  // namespace

TEST_CASE("area threshold scales with frame area") {
    const CategoryConfig cfg = street_config();
    CHECK(effective_area_threshold(cfg, 256, 256) == 64);
    CHECK(effective_area_threshold(cfg, 32, 32) == 1);
    CHECK(effective_area_threshold(cfg, 512, 512) == 256);
    CHECK(effective_area_threshold(cfg, 64, 64) == 4);
    CHECK(effective_area_threshold(cfg, 8, 8) == 1);
}

TEST_CASE("object and road masks follow the category sets") {
    const CategoryConfig cfg = street_config();

    const LabelMap all_road(6, 6, 0);
    auto [obj0, road0] = object_and_road_masks(all_road, cfg);
    CHECK(popcount(obj0) == 0);
    CHECK(popcount(road0) == 36);

    LabelMap with_car(6, 6, 0);
    paint(with_car, 1, 1, 2, 3, 5);
    auto [obj1, road1] = object_and_road_masks(with_car, cfg);
    CHECK(popcount(obj1) == 6);
    CHECK(obj1.at(1, 1));
    CHECK(popcount(road1) == 30);

    const LabelMap uncertain(4, 4, kUncertainId);
    auto [obj2, road2] = object_and_road_masks(uncertain, cfg);
    CHECK(popcount(obj2) == 0);
    CHECK(popcount(road2) == 0);
}

TEST_CASE("region selection enforces area, occlusion, and road-contact rules") {
    const CategoryConfig cfg = street_config();  // 64x64 frame -> threshold 4
    LabelMap fake(64, 64, 1);                    // building background, no accidental road contact
    paint(fake, 2, 2, 3, 3, 11);                 // traffic sign, area 9 > 4
    paint(fake, 10, 10, 2, 2, 10);               // traffic light, area 4 == threshold
    paint(fake, 20, 2, 3, 3, 9);                 // motorcycle overlapping the road band
    paint(fake, 30, 30, 3, 3, 9);                // motorcycle with no road contact
    paint(fake, 40, 40, 4, 4, 11);               // traffic sign under an occluding object

    BinaryMask obj(64, 64);
    for (int y = 40; y < 44; ++y) {
        obj.set(y, 40, true);
    }
    BinaryMask road(64, 64);
    for (int x = 0; x < 64; ++x) {
        road.set(22, x, true);
    }

    const auto regions = select_mix_regions(fake, obj, road, cfg);
    REQUIRE(regions.size() == 2);

    bool saw_sign = false;
    bool saw_moto = false;
    for (const auto& region : regions) {
        if (region.category == 11) {
            saw_sign = true;
            CHECK(region.area == 9);
            CHECK(region.bbox.top == 2);
        }
        if (region.category == 9) {
            saw_moto = true;
            CHECK(region.bbox.top == 20);
        }
    }
    CHECK(saw_sign);
    CHECK(saw_moto);

    const BinaryMask q = build_mixing_mask(fake, obj, road, cfg);
    CHECK(popcount(q) == 9 + 9);
    CHECK_FALSE(intersects(q, obj));
}

TEST_CASE("motorcycle region needs road contact only because it is a vehicle") {
    CategoryConfig cfg = street_config();
    LabelMap fake(64, 64, 1);
    paint(fake, 30, 30, 3, 3, 9);
    const BinaryMask obj(64, 64);
    const BinaryMask road(64, 64);

    CHECK(select_mix_regions(fake, obj, road, cfg).empty());

    cfg.vehicle_set.erase(9);
    CHECK(select_mix_regions(fake, obj, road, cfg).size() == 1);
}

TEST_CASE("domain A mix follows the pixel partition") {
    oracle::Rng rng(0xa31);
    const Image x_fa = oracle::random_image(rng, 8, 8, 3);
    const Image x_ra = oracle::random_image(rng, 8, 8, 3);

    SUBCASE("empty masks reproduce the real image") {
        const MixResult r = compose_mix_a(x_fa, x_ra, BinaryMask(8, 8), BinaryMask(8, 8));
        CHECK(r.mixed.data == x_ra.data);
        CHECK(r.ala_factor == 1.0);
        CHECK(popcount(r.context) == 64);
    }

    SUBCASE("single original pixel, everything else real") {
        BinaryMask q_o(8, 8);
        q_o.set(3, 5, true);
        const MixResult r = compose_mix_a(x_fa, x_ra, q_o, BinaryMask(8, 8));
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                for (int c = 0; c < 3; ++c) {
                    const double expect = (y == 3 && x == 5) ? x_fa.at(y, x, c) : x_ra.at(y, x, c);
                    CHECK(r.mixed.at(y, x, c) == expect);
                }
            }
        }
    }

    SUBCASE("overlap takes the original, flip fills the rest") {
        BinaryMask q_o(8, 8);
        BinaryMask q_f(8, 8);
        q_o.set(2, 2, true);
        q_f.set(2, 2, true);  // overlap
        q_f.set(4, 1, true);
        const MixResult r = compose_mix_a(x_fa, x_ra, q_o, q_f);
        const Image flipped = flip_h(x_fa);
        for (int c = 0; c < 3; ++c) {
            CHECK(r.mixed.at(2, 2, c) == x_fa.at(2, 2, c));
            CHECK(r.mixed.at(4, 1, c) == flipped.at(4, 1, c));
        }
        CHECK(popcount(r.context) == 62);
    }
}

TEST_CASE("domain B mix applies the luminance factor") {
    Image x_fb(6, 6, 1, 0.4);
    Image x_rb(6, 6, 1, 0.1);
    BinaryMask road(6, 6);
    for (int x = 0; x < 6; ++x) {
        road.set(5, x, true);
        x_rb.at(5, x) = 0.6;
    }
    BinaryMask q_o(6, 6);
    q_o.set(1, 1, true);
    q_o.set(1, 2, true);
    q_o.set(2, 1, true);
    q_o.set(2, 2, true);

    SUBCASE("hand factor 0.6 / 0.4") {
        const MixResult r = compose_mix_b(x_fb, x_rb, q_o, BinaryMask(6, 6), road);
        CHECK(r.ala_factor == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(r.mixed.at(1, 1) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(r.mixed.at(0, 0) == 0.1);
        CHECK(r.mixed.at(5, 0) == 0.6);
    }

    SUBCASE("factor one is an exact fixed point") {
        for (int y = 1; y <= 2; ++y) {
            for (int x = 1; x <= 2; ++x) {
                x_fb.at(y, x) = 0.6;
            }
        }
        const MixResult r = compose_mix_b(x_fb, x_rb, q_o, BinaryMask(6, 6), road);
        CHECK(r.ala_factor == 1.0);
        CHECK(r.mixed.at(1, 1) == 0.6);
        CHECK(r.mixed.at(2, 2) == 0.6);
    }

    SUBCASE("empty paste returns the real image") {
        const MixResult r = compose_mix_b(x_fb, x_rb, BinaryMask(6, 6), BinaryMask(6, 6), road);
        CHECK(r.mixed.data == x_rb.data);
        CHECK(r.ala_factor == 1.0);
    }

    SUBCASE("missing road or zero object mean raise EmptyMask") {
        CHECK_THROWS_AS(compose_mix_b(x_fb, x_rb, q_o, BinaryMask(6, 6), BinaryMask(6, 6)), EmptyMask);
        Image dark = x_fb;
        for (double& v : dark.data) {
            v = 0.0;
        }
        CHECK_THROWS_AS(compose_mix_b(dark, x_rb, q_o, BinaryMask(6, 6), road), EmptyMask);
    }

    SUBCASE("scaling clamps to unit range") {
        Image bright = x_fb;
        bright.at(1, 1) = 0.9;
        const MixResult r = compose_mix_b(bright, x_rb, q_o, BinaryMask(6, 6), road);
        CHECK(r.ala_factor > 1.0);
        CHECK(r.mixed.at(1, 1) == 1.0);
    }
}

TEST_CASE("partition exactness holds on random mixes") {
    oracle::Rng rng(0xbeb);
    const CategoryConfig cfg = street_config();
    for (int trial = 0; trial < 30; ++trial) {
        const LabelMap real_labels = oracle::random_labels(rng, 32, 32);
        const LabelMap fake_labels = oracle::random_labels(rng, 32, 32);
        auto [obj, road] = object_and_road_masks(real_labels, cfg);
        const BinaryMask q_o = build_mixing_mask(fake_labels, obj, road, cfg);
        const BinaryMask q_f = build_mixing_mask(flip_h(fake_labels), obj, road, cfg);
        const Image x_fa = oracle::random_image(rng, 32, 32, 3);
        const Image x_ra = oracle::random_image(rng, 32, 32, 3);
        const MixResult r = compose_mix_a(x_fa, x_ra, q_o, q_f);

        const Image flipped = flip_h(x_fa);
        const BinaryMask flip_only = mask_sub(q_f, q_o);
        for (int y = 0; y < 32; ++y) {
            for (int x = 0; x < 32; ++x) {
                const int sources = (q_o.at(y, x) ? 1 : 0) + (flip_only.at(y, x) ? 1 : 0) +
                                    (r.context.at(y, x) ? 1 : 0);
                REQUIRE(sources == 1);
                const Image& source = q_o.at(y, x) ? x_fa : (flip_only.at(y, x) ? flipped : x_ra);
                for (int c = 0; c < 3; ++c) {
                    REQUIRE(r.mixed.at(y, x, c) == source.at(y, x, c));
                }
            }
        }
        REQUIRE_FALSE(intersects(q_o, obj));
        REQUIRE_FALSE(intersects(q_f, obj));
    }
}

TEST_CASE("traffic light instance flips are seeded and involutive") {
    oracle::Rng orng(0x7f1);
    const Image img = oracle::random_image(orng, 12, 12, 1);
    BinaryMask tl(12, 12);
    for (int y = 2; y < 6; ++y) {
        tl.set(y, 3, true);
    }
    for (int y = 7; y < 10; ++y) {
        for (int x = 8; x < 10; ++x) {
            tl.set(y, x, true);
        }
    }
    const auto regions = connected_components(tl, 10);
    REQUIRE(regions.size() == 2);

    SUBCASE("probability zero never flips") {
        std::mt19937_64 rng(42);
        const FlipOutcome out = flip_tl_instances(img, regions, rng, 0.0);
        CHECK(out.flipped.empty());
        CHECK(out.image.data == img.data);
    }

    SUBCASE("probability one flips everything, twice restores") {
        std::mt19937_64 rng(42);
        const FlipOutcome once = flip_tl_instances(img, regions, rng, 1.0);
        CHECK(once.flipped.size() == 2);
        CHECK(once.image.at(2, 3) == img.at(5, 3));
        CHECK(once.image.at(7, 8) == img.at(9, 8));
        CHECK(once.image.at(0, 0) == img.at(0, 0));

        std::mt19937_64 rng2(42);
        const FlipOutcome twice = flip_tl_instances(once.image, regions, rng2, 1.0);
        CHECK(twice.image.data == img.data);
    }

    SUBCASE("fixed seed reproduces the flip record") {
        for (int run = 0; run < 100; ++run) {
            std::mt19937_64 r1(run);
            std::mt19937_64 r2(run);
            const FlipOutcome a = flip_tl_instances(img, regions, r1, 0.5);
            const FlipOutcome b = flip_tl_instances(img, regions, r2, 0.5);
            REQUIRE(a.flipped == b.flipped);
            REQUIRE(a.image.data == b.image.data);
        }
    }
}
