// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/oamix.hpp"

#include <algorithm>
#include <cmath>

#include "foalkit/imageops.hpp"
#include "foalkit/mask_ops.hpp"
#include "foalkit/random.hpp"

namespace foalkit {

long long effective_area_threshold(const CategoryConfig& cfg, int height, int width) {
    const double scale = static_cast<double>(height) * width / (256.0 * 256.0);
    return std::max<long long>(1, std::llround(cfg.area_threshold * scale));
}

std::pair<BinaryMask, BinaryMask> object_and_road_masks(const LabelMap& labels, const CategoryConfig& cfg) {
    return {categories_mask(labels, cfg.object_set), category_mask(labels, cfg.road_id)};
}

std::vector<ConnectedRegion> select_mix_regions(const LabelMap& fake_labels, const BinaryMask& obj,
                                                const BinaryMask& road, const CategoryConfig& cfg) {
    if (!obj.same_extent(fake_labels) || !road.same_extent(fake_labels))
        throw ShapeMismatch("select_mix_regions: label map and mask extents differ");
    const long long min_area = effective_area_threshold(cfg, fake_labels.height, fake_labels.width);
    std::vector<ConnectedRegion> selected;
    for (CategoryId cat : cfg.soc_set) {
        const BinaryMask cat_pixels = category_mask(fake_labels, cat);
        for (auto& region : connected_components(cat_pixels, cat)) {
            if (region.area <= min_area) continue;
            if (intersects(region.mask, obj)) continue;
            if (cfg.vehicle_set.count(cat) && !intersects(region.mask, road)) continue;
            selected.push_back(std::move(region));
        }
    }
    return selected;
}

BinaryMask build_mixing_mask(const LabelMap& fake_labels, const BinaryMask& obj, const BinaryMask& road,
                             const CategoryConfig& cfg) {
    BinaryMask q(fake_labels.height, fake_labels.width);
    for (const auto& region : select_mix_regions(fake_labels, obj, road, cfg))
        q = mask_or(q, region.mask);
    return q;
}

Image compose_object_image(const Image& x, const BinaryMask& q_o, const BinaryMask& q_f) {
    if (!q_o.same_extent(x) || !q_f.same_extent(x))
        throw ShapeMismatch("compose_object_image: mask and image extents differ");
    const Image flipped = flip_h(x);
    Image out(x.height, x.width, x.channels);
    for (int y = 0; y < x.height; ++y)
        for (int xx = 0; xx < x.width; ++xx) {
            if (q_o.at(y, xx)) {
                for (int c = 0; c < x.channels; ++c) out.at(y, xx, c) = x.at(y, xx, c);
            } else if (q_f.at(y, xx)) {
                for (int c = 0; c < x.channels; ++c) out.at(y, xx, c) = flipped.at(y, xx, c);
            }
        }
    return out;
}

MixResult compose_mix_a(const Image& x_fa, const Image& x_ra, const BinaryMask& q_o, const BinaryMask& q_f) {
    if (!x_fa.same_shape(x_ra)) throw ShapeMismatch("compose_mix_a: fake and real image shapes differ");
    MixResult result;
    result.q_orig = q_o;
    result.q_flip = q_f;
    result.context = mask_not(mask_or(q_o, q_f));
    result.ala_factor = 1.0;
    result.mixed = compose_object_image(x_fa, q_o, q_f);
    for (int y = 0; y < x_ra.height; ++y)
        for (int x = 0; x < x_ra.width; ++x)
            if (result.context.at(y, x))
                for (int c = 0; c < x_ra.channels; ++c)
                    result.mixed.at(y, x, c) = x_ra.at(y, x, c);
    return result;
}

MixResult compose_mix_b(const Image& x_fb, const Image& x_rb, const BinaryMask& q_o, const BinaryMask& q_f,
                        const BinaryMask& road_b) {
    return compose_mix_b_with_object(compose_object_image(x_fb, q_o, q_f), x_rb, q_o, q_f, road_b);
}

MixResult compose_mix_b_with_object(const Image& x_fb_obj, const Image& x_rb, const BinaryMask& q_o,
                                    const BinaryMask& q_f, const BinaryMask& road_b) {
    if (!x_fb_obj.same_shape(x_rb)) throw ShapeMismatch("compose_mix_b: object and real image shapes differ");
    if (x_rb.channels != 1) throw ChannelMismatch("compose_mix_b expects 1-channel NTIR images");

    MixResult result;
    result.q_orig = q_o;
    result.q_flip = q_f;
    const BinaryMask pasted = mask_or(q_o, q_f);
    result.context = mask_not(pasted);

    if (popcount(pasted) == 0) {
        result.ala_factor = 1.0;
        result.mixed = x_rb;
        return result;
    }
    const double mu_obj = masked_mean(x_fb_obj, pasted);
    if (mu_obj <= 0.0) throw EmptyMask("compose_mix_b: pasted object mean is zero");
    const double mu_road = masked_mean(x_rb, road_b);  // throws EmptyMask if road empty
    result.ala_factor = mu_road / mu_obj;

    result.mixed = Image(x_rb.height, x_rb.width, 1);
    for (int y = 0; y < x_rb.height; ++y)
        for (int x = 0; x < x_rb.width; ++x) {
            if (pasted.at(y, x))
                result.mixed.at(y, x) = std::clamp(result.ala_factor * x_fb_obj.at(y, x), 0.0, 1.0);
            else
                result.mixed.at(y, x) = x_rb.at(y, x);
        }
    return result;
}

FlipOutcome flip_tl_instances(Image region_img, const std::vector<ConnectedRegion>& tl_regions,
                              std::mt19937_64& rng, double p_flip) {
    FlipOutcome outcome;
    outcome.image = std::move(region_img);
    for (std::size_t i = 0; i < tl_regions.size(); ++i) {
        if (uniform_unit(rng) >= p_flip) continue;
        const BBox& box = tl_regions[i].bbox;
        for (int r = 0; r < box.height / 2; ++r) {
            const int ya = box.top + r, yb = box.top + box.height - 1 - r;
            for (int x = box.left; x < box.left + box.width; ++x)
                for (int c = 0; c < outcome.image.channels; ++c)
                    std::swap(outcome.image.at(ya, x, c), outcome.image.at(yb, x, c));
        }
        outcome.flipped.push_back(i);
    }
    return outcome;
}

}  // namespace foalkit
