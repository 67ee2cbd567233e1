// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "foalkit/image.hpp"

namespace foalkit {

/// Category-id sets and the small-object area rule used by mixing and the
/// sample scheduler. `area_threshold` is expressed at a 256x256 frame and
/// scaled proportionally to the actual frame area.
struct CategoryConfig {
    std::set<CategoryId> soc_set;      // small object categories
    std::set<CategoryId> vehicle_set;  // categories requiring road contact
    std::set<CategoryId> object_set;   // foreground objects that must not be occluded
    CategoryId road_id = 0;
    CategoryId vegetation_id = 0;
    CategoryId traffic_light_id = 0;
    CategoryId streetlight_id = 0;
    long long area_threshold = 64;
};

/// Area rule threshold scaled to the given frame (minimum 1).
long long effective_area_threshold(const CategoryConfig& cfg, int height, int width);

/// A mixed image plus the masks that produced it and the luminance factor
/// (1.0 for the color domain).
struct MixResult {
    Image mixed;
    BinaryMask q_orig;
    BinaryMask q_flip;
    BinaryMask context;
    double ala_factor = 1.0;
};

/// Foreground-object and road masks of a label map.
std::pair<BinaryMask, BinaryMask> object_and_road_masks(const LabelMap& labels, const CategoryConfig& cfg);

/// Connected small-object regions of `fake_labels` eligible for pasting:
/// area above the (scaled) threshold, disjoint from `obj`, and -- for vehicle
/// categories -- touching `road`.
std::vector<ConnectedRegion> select_mix_regions(const LabelMap& fake_labels, const BinaryMask& obj,
                                                const BinaryMask& road, const CategoryConfig& cfg);

/// Union of the selected regions.
BinaryMask build_mixing_mask(const LabelMap& fake_labels, const BinaryMask& obj, const BinaryMask& road,
                             const CategoryConfig& cfg);

/// Mixed object areas: q_o pixels from `x`, remaining q_f pixels from the
/// horizontal flip of `x`, zero elsewhere.
Image compose_object_image(const Image& x, const BinaryMask& q_o, const BinaryMask& q_f);

/// Color-domain mix: pasted object areas over the real image. ala_factor is 1.
MixResult compose_mix_a(const Image& x_fa, const Image& x_ra, const BinaryMask& q_o, const BinaryMask& q_f);

/// NTIR-domain mix with adaptive luminance adjustment: pasted pixels are
/// scaled by mean(road of x_rb) / mean(pasted objects) and clamped to [0,1].
/// Throws EmptyMask when the road mask is empty or the object mean is zero.
MixResult compose_mix_b(const Image& x_fb, const Image& x_rb, const BinaryMask& q_o, const BinaryMask& q_f,
                        const BinaryMask& road_b);

/// Variant taking a pre-assembled object image (e.g. after traffic-light
/// instance flips) instead of composing it from x_fb.
MixResult compose_mix_b_with_object(const Image& x_fb_obj, const Image& x_rb, const BinaryMask& q_o,
                                    const BinaryMask& q_f, const BinaryMask& road_b);

struct FlipOutcome {
    Image image;
    std::vector<std::size_t> flipped;  // indices into the region list
};

/// Independently flips each region's bounding box vertically with
/// probability p_flip, consuming one uniform draw per region in order.
FlipOutcome flip_tl_instances(Image region_img, const std::vector<ConnectedRegion>& tl_regions,
                              std::mt19937_64& rng, double p_flip);

}  // namespace foalkit
