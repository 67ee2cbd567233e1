// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/trafficlight.hpp"

#include <algorithm>
#include <cmath>

#include "foalkit/color.hpp"
#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/mask_ops.hpp"

namespace foalkit {

namespace {

bool in_ranges(double h, const std::vector<HueRange>& ranges) {
    for (const HueRange& r : ranges) {
        if (h >= r.lo && h < r.hi) {
            return true;
        }
    }
    return false;
}

// Cyclic channel permutation: +1/3 hue (red->green) or -1/3 (green->red).
// Relabeling channels rotates the hue hexagon by exactly 120 degrees while
// leaving max/min, hence S and V, bit-identical.
void rotate_hue_third(Image& img, const BinaryMask& where, bool forward) {
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!where.at(y, x)) {
                continue;
            }
            const double r = img.at(y, x, 0);
            const double g = img.at(y, x, 1);
            const double b = img.at(y, x, 2);
            if (forward) {
                img.at(y, x, 0) = b;
                img.at(y, x, 1) = r;
                img.at(y, x, 2) = g;
            } else {
                img.at(y, x, 0) = g;
                img.at(y, x, 1) = b;
                img.at(y, x, 2) = r;
            }
        }
    }
}

}  // namespace

TlRegionMasks bright_dark_masks(const Image& x, const BinaryMask& tl_mask) {
    const Image gray = to_grayscale(x);
    if (!tl_mask.same_extent(gray)) {
        throw ShapeMismatch("bright_dark_masks: mask extent must match the image");
    }
    const double mean = masked_mean(gray, tl_mask);
    TlRegionMasks out;
    out.bright = BinaryMask(tl_mask.height, tl_mask.width);
    out.dark = BinaryMask(tl_mask.height, tl_mask.width);
    out.upper = BinaryMask(tl_mask.height, tl_mask.width);
    out.lower = BinaryMask(tl_mask.height, tl_mask.width);
    for (int y = 0; y < tl_mask.height; ++y) {
        for (int x2 = 0; x2 < tl_mask.width; ++x2) {
            if (!tl_mask.at(y, x2)) {
                continue;
            }
            if (gray.at(y, x2, 0) >= mean) {
                out.bright.set(y, x2, true);
            } else {
                out.dark.set(y, x2, true);
            }
        }
    }
    return out;
}

TlRegionMasks split_upper_lower(const BinaryMask& tl_mask) {
    TlRegionMasks out;
    out.bright = BinaryMask(tl_mask.height, tl_mask.width);
    out.dark = BinaryMask(tl_mask.height, tl_mask.width);
    out.upper = BinaryMask(tl_mask.height, tl_mask.width);
    out.lower = BinaryMask(tl_mask.height, tl_mask.width);
    for (const ConnectedRegion& region : connected_components(tl_mask, 0)) {
        const double center = region.bbox.top + (region.bbox.height - 1) / 2.0;
        for (int y = region.bbox.top; y < region.bbox.top + region.bbox.height; ++y) {
            for (int x = region.bbox.left; x < region.bbox.left + region.bbox.width; ++x) {
                if (!region.mask.at(y, x)) {
                    continue;
                }
                if (static_cast<double>(y) < center) {
                    out.upper.set(y, x, true);
                } else {
                    out.lower.set(y, x, true);
                }
            }
        }
    }
    return out;
}

std::pair<BinaryMask, BinaryMask> detect_red_green(const Image& instance, const TlColorParams& params) {
    if (instance.channels != 3) {
        throw ChannelMismatch("detect_red_green: instance must have three channels");
    }
    BinaryMask red(instance.height, instance.width);
    BinaryMask green(instance.height, instance.width);
    for (int y = 0; y < instance.height; ++y) {
        for (int x = 0; x < instance.width; ++x) {
            const Hsv hsv = rgb_to_hsv(instance.at(y, x, 0), instance.at(y, x, 1), instance.at(y, x, 2));
            if (hsv.s < params.saturation_gate || hsv.v < params.value_gate) {
                continue;
            }
            if (in_ranges(hsv.h, params.red_hue_ranges)) {
                red.set(y, x, true);
            } else if (in_ranges(hsv.h, params.green_hue_ranges)) {
                green.set(y, x, true);
            }
        }
    }
    return {red, green};
}

Image convert_color(const Image& instance, const TlColorParams& params) {
    if (instance.channels != 3) {
        throw ChannelMismatch("convert_color: instance must have three channels");
    }
    const bool tall =
        static_cast<double>(instance.height) / static_cast<double>(instance.width) > params.aspect_threshold;
    Image out = tall ? flip_v(instance) : instance;
    auto [red, green] = detect_red_green(out, params);
    if (popcount(red) > popcount(green)) {
        rotate_hue_third(out, red, true);
    } else {
        rotate_hue_third(out, green, false);
    }
    return out;
}

BinaryMask bright_region_mask(const Image& x, const BinaryMask& tl_mask, const TlColorParams& params) {
    if (!tl_mask.same_extent(x)) {
        throw ShapeMismatch("bright_region_mask: mask extent must match the image");
    }
    if (x.channels != 3) {
        throw ChannelMismatch("bright_region_mask: image must have three channels");
    }
    BinaryMask out(tl_mask.height, tl_mask.width);
    for (const ConnectedRegion& region : connected_components(tl_mask, 0)) {
        Image crop(region.bbox.height, region.bbox.width, 3);
        for (int y = 0; y < region.bbox.height; ++y) {
            for (int x2 = 0; x2 < region.bbox.width; ++x2) {
                for (int c = 0; c < 3; ++c) {
                    crop.at(y, x2, c) = x.at(region.bbox.top + y, region.bbox.left + x2, c);
                }
            }
        }
        auto [red, green] = detect_red_green(crop, params);
        for (int y = 0; y < region.bbox.height; ++y) {
            for (int x2 = 0; x2 < region.bbox.width; ++x2) {
                const int fy = region.bbox.top + y;
                const int fx = region.bbox.left + x2;
                if (region.mask.at(fy, fx) && (red.at(y, x2) || green.at(y, x2))) {
                    out.set(fy, fx, true);
                }
            }
        }
    }
    return out;
}

ColorFeature mean_color_feature(const Image& img, const BinaryMask& m) {
    if (!m.same_extent(img)) {
        throw ShapeMismatch("mean_color_feature: mask extent must match the image");
    }
    const long long n = popcount(m);
    if (n == 0) {
        throw EmptyMask("mean_color_feature: empty mask");
    }
    ColorFeature feature(static_cast<std::size_t>(img.channels), 0.0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!m.at(y, x)) {
                continue;
            }
            for (int c = 0; c < img.channels; ++c) {
                feature[static_cast<std::size_t>(c)] += img.at(y, x, c);
            }
        }
    }
    for (double& v : feature) {
        v /= static_cast<double>(n);
    }
    return feature;
}

namespace {

double feature_distance(const ColorFeature& a, const ColorFeature& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

double tl_beta_weight(double d_ll, double d_lu, double tau) {
    return 1.0 / (std::min(d_ll, d_lu) + tau);
}

double traffic_light_color_loss(const Image& x_ra, const Image& x_fa, const TlRegionMasks& masks_a,
                                const TlRegionMasks& masks_b, const TlColorParams& params) {
    if (x_ra.channels != x_fa.channels) {
        throw ChannelMismatch("traffic_light_color_loss: images must share channel count");
    }
    const BinaryMask ub_a = mask_and(masks_a.upper, masks_a.bright);
    const BinaryMask lb_a = mask_and(masks_a.lower, masks_a.bright);
    const BinaryMask ub_b = mask_and(masks_b.upper, masks_b.bright);
    const BinaryMask lb_b = mask_and(masks_b.lower, masks_b.bright);

    const bool have_ub_a = popcount(ub_a) > 0;
    const bool have_lb_a = popcount(lb_a) > 0;
    const bool have_ub_b = popcount(ub_b) > 0;
    const bool have_lb_b = popcount(lb_b) > 0;

    double loss = 0.0;
    if (have_ub_a && have_ub_b) {
        loss += feature_distance(mean_color_feature(x_fa, ub_b), mean_color_feature(x_ra, ub_a));
    }
    if (have_lb_a && have_lb_b) {
        const double d_ll = feature_distance(mean_color_feature(x_fa, lb_b), mean_color_feature(x_ra, lb_a));
        const double d_lu = have_ub_a
                                ? feature_distance(mean_color_feature(x_fa, lb_b), mean_color_feature(x_ra, ub_a))
                                : d_ll;
        loss += tl_beta_weight(d_ll, d_lu, params.tau) * d_ll;
    }
    return loss;
}

double traffic_light_luminance_loss(const Image& x_fa, const TlRegionMasks& masks) {
    const Image gray = to_grayscale(x_fa);
    const double delta = masked_min(gray, masks.bright);
    const double mu = masked_mean(gray, masks.dark);
    return std::max(mu - delta, 0.0) / (delta + 1e-6);
}

LabelMap vegetation_uncertainty_correction(const LabelMap& labels, const Image& x_fb,
                                           CategoryId vegetation_id) {
    const Image gray = to_grayscale(x_fb);
    if (labels.height != gray.height || labels.width != gray.width) {
        throw ShapeMismatch("vegetation_uncertainty_correction: shapes must match");
    }
    double sum = 0.0;
    for (double v : gray.data) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(gray.data.size());
    LabelMap out = labels;
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            if (out.at(y, x) == vegetation_id && gray.at(y, x, 0) > mean) {
                out.set(y, x, out.uncertain_id);
            }
        }
    }
    return out;
}

}  // namespace foalkit
