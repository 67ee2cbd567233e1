// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <utility>
#include <vector>

#include "foalkit/image.hpp"
#include "foalkit/losses.hpp"

namespace foalkit {

/// Sub-masks of a traffic-light mask. bright/dark partition the mask by
/// luminance; upper/lower partition it by per-instance bbox center height.
/// Ops that build only one pair leave the other pair empty (zero extent
/// masks are never produced; unfilled pairs are all-zero of full extent).
struct TlRegionMasks {
    BinaryMask bright;
    BinaryMask dark;
    BinaryMask upper;
    BinaryMask lower;
};

/// Per-channel masked means, one entry per image channel.
using ColorFeature = std::vector<double>;

struct HueRange {
    double lo = 0.0;  // inclusive
    double hi = 0.0;  // exclusive
};

struct TlColorParams {
    double tau = 0.05;
    double aspect_threshold = 2.0;
    double saturation_gate = 0.3;
    double value_gate = 0.3;
    std::vector<HueRange> red_hue_ranges = {{0.0, 1.0 / 18.0}, {17.0 / 18.0, 1.0}};
    std::vector<HueRange> green_hue_ranges = {{2.0 / 9.0, 4.0 / 9.0}};
};

/// Splits the traffic-light pixels of a single-channel image into bright
/// (value >= masked mean) and dark (the rest). upper/lower stay empty.
TlRegionMasks bright_dark_masks(const Image& x, const BinaryMask& tl_mask);

/// Splits each connected traffic-light instance at its bbox vertical
/// center: rows strictly above the center go to upper, the rest to lower.
/// bright/dark stay empty.
TlRegionMasks split_upper_lower(const BinaryMask& tl_mask);

/// Hue-range classification with saturation/value gating. Returns
/// (red_mask, green_mask) over the whole instance image.
std::pair<BinaryMask, BinaryMask> detect_red_green(const Image& instance, const TlColorParams& params);

/// Red<->green conversion of an instance crop. Tall crops (height/width >
/// aspect_threshold) are flipped vertically first. Whichever of the
/// detected red/green regions is larger is mapped to the other color by a
/// 1/3 hue rotation; saturation and value are preserved exactly.
Image convert_color(const Image& instance, const TlColorParams& params);

/// Union of per-instance red/green detections, fused over all connected
/// instances of tl_mask: the lit-lamp mask of a color image.
BinaryMask bright_region_mask(const Image& x, const BinaryMask& tl_mask, const TlColorParams& params);

/// Per-channel mean over masked pixels.
ColorFeature mean_color_feature(const Image& img, const BinaryMask& m);

/// Weight on the lower-region color distance: 1 / (min(d_ll, d_lu) + tau).
double tl_beta_weight(double d_ll, double d_lu, double tau);

/// Color consistency between the real image x_ra (masks_a: upper/lower +
/// bright from red/green detection) and the translated image x_fa
/// (masks_b: upper/lower + bright from source luminance):
///   d_uu + beta_w * d_ll  with  beta_w = 1 / (min(d_ll, d_lu) + tau).
/// An empty sub-region zeroes its branch instead of erroring; d_lu drops
/// out of the min when its sub-regions are empty.
double traffic_light_color_loss(const Image& x_ra, const Image& x_fa, const TlRegionMasks& masks_a,
                                const TlRegionMasks& masks_b, const TlColorParams& params);

/// Luminance ratio hinge: with delta = min luminance over the bright mask
/// and mu = mean luminance over the dark mask, returns
/// max(mu - delta, 0) / (delta + 1e-6).
double traffic_light_luminance_loss(const Image& x_fa, const TlRegionMasks& masks);

/// Vegetation pixels whose translated luminance strictly exceeds the
/// whole-image mean are relabeled uncertain; everything else is untouched.
LabelMap vegetation_uncertainty_correction(const LabelMap& labels, const Image& x_fb,
                                           CategoryId vegetation_id);

}  // namespace foalkit
