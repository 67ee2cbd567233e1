// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/losses.hpp"

#include <algorithm>
#include <cmath>

#include "foalkit/edges.hpp"
#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/similarity.hpp"

namespace foalkit {

double default_sga_penalty(const Image& gradient_map, const Image& edge_map) {
    if (!gradient_map.same_shape(edge_map)) {
        throw ShapeMismatch("sga penalty: gradient and edge maps must share shape");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < gradient_map.data.size(); ++i) {
        acc += std::abs(gradient_map.data[i] - edge_map.data[i]);
    }
    return acc / static_cast<double>(gradient_map.data.size());
}

double default_cgr_penalty(const Image& context_a, const Image& context_b) {
    if (!context_a.same_extent(context_b)) {
        throw ShapeMismatch("cgr penalty: contexts must share extent");
    }
    const Image ga = sobel_gradient(to_grayscale(context_a));
    const Image gb = sobel_gradient(to_grayscale(context_b));
    return smooth_l1_loss(ga, gb);
}

double midf(const BinaryMask& mask, const Image& rec, const Image& ori, const LossWeights& w) {
    if (!rec.same_shape(ori)) {
        throw ShapeMismatch("midf: rec and ori must share shape");
    }
    if (!mask.same_extent(rec)) {
        throw ShapeMismatch("midf: mask extent must match the images");
    }
    const Image mrec = multiply_mask(rec, mask);
    const Image mori = multiply_mask(ori, mask);
    return ssim_loss(mrec, mori) + w.lambda_sl1 * smooth_l1_loss(mrec, mori);
}

double street_light_luminance_loss(const Image& x_fb, const BinaryMask& sl_bright, const BinaryMask& veg,
                                   const LossWeights& w) {
    const Image gray = to_grayscale(x_fb);
    const double mean_veg = masked_mean(gray, veg);
    const double min_sl = masked_min(gray, sl_bright);
    return std::max(mean_veg - min_sl + w.theta_tem, 0.0);
}

namespace {

// Luminance vector centered on the region mean, then zeroed off-region:
// (I - mean_region(I)) .* mask, vectorized.
void centered_masked(const Image& gray, const BinaryMask& mask, std::vector<double>& out) {
    out.assign(gray.data.size(), 0.0);
    const double mean = masked_mean(gray, mask);
    std::size_t i = 0;
    for (int y = 0; y < gray.height; ++y) {
        for (int x = 0; x < gray.width; ++x, ++i) {
            out[i] = mask.at(y, x) ? (gray.at(y, x, 0) - mean) : 0.0;
        }
    }
}

}  // namespace

double traffic_light_luminance_adjust_loss(const Image& gray_ra, const Image& x_fb, const BinaryMask& tl_mask,
                                           const LossWeights& w) {
    if (gray_ra.channels != 1) {
        throw ChannelMismatch("tla: reference luminance image must have one channel");
    }
    if (!gray_ra.same_extent(x_fb) || !tl_mask.same_extent(gray_ra)) {
        throw ShapeMismatch("tla: inputs must share extent");
    }
    const Image gray_fb = to_grayscale(x_fb);
    std::vector<double> va;
    std::vector<double> vb;
    centered_masked(gray_ra, tl_mask, va);
    centered_masked(gray_fb, tl_mask, vb);
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        na += va[i] * va[i];
        nb += vb[i] * vb[i];
    }
    if (na <= 0.0 || nb <= 0.0) {
        return w.theta_sim;
    }
    const double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::max(w.theta_sim - cosine, 0.0);
}

double artifact_bias_correction_loss(const Image& x_fb, const BinaryMask& sl_bright, const BinaryMask& veg,
                                     const Image& gray_ra, const BinaryMask& tl_mask,
                                     const Image& gradient_map_lights, const Image& edge_map_lights,
                                     const PenaltyHook& sga, const LossWeights& w) {
    const double sla = street_light_luminance_loss(x_fb, sl_bright, veg, w);
    const double tla = traffic_light_luminance_adjust_loss(gray_ra, x_fb, tl_mask, w);
    const PenaltyHook& hook = sga ? sga : PenaltyHook(default_sga_penalty);
    return sla + tla + w.lambda_sga * hook(gradient_map_lights, edge_map_lights);
}

double color_bias_correction_loss(const BinaryMask& m_soc, const Image& x_rec, const Image& x_ra,
                                  const LossWeights& w) {
    return midf(m_soc, x_rec, x_ra, w);
}

double appearance_consistency_a(const BinaryMask& q_ao, const Image& x_ab_mix, const Image& x_rb,
                                const LossWeights& w) {
    return midf(q_ao, x_ab_mix, x_rb, w);
}

double appearance_consistency_b(const BinaryMask& q_bo, const BinaryMask& q_con, const Image& x_ba_mix,
                                const Image& x_ra, const Image& x_rb, const PenaltyHook& cgr,
                                const LossWeights& w) {
    if (!x_ba_mix.same_extent(x_rb) || !q_con.same_extent(x_ba_mix)) {
        throw ShapeMismatch("ac_b: inputs must share extent");
    }
    const double fidelity = midf(q_bo, x_ba_mix, x_ra, w);
    const Image ctx_mix = multiply_mask(x_ba_mix, q_con);
    const Image ctx_real = multiply_mask(x_rb, q_con);
    const PenaltyHook& hook = cgr ? cgr : PenaltyHook(default_cgr_penalty);
    return fidelity + hook(ctx_mix, ctx_real);
}

const std::vector<std::string>& aggregate_leaf_terms() {
    static const std::vector<std::string> kLeaves = {"abc", "cbc", "ac_a", "ac_b", "tll", "tlc"};
    return kLeaves;
}

LossReport aggregate(const std::map<std::string, double>& terms, const LossWeights& /*w*/) {
    LossReport report;
    report.values = terms;
    double total = 0.0;
    for (const std::string& key : aggregate_leaf_terms()) {
        auto it = terms.find(key);
        if (it == terms.end()) {
            throw MissingTerm("aggregate: missing leaf term '" + key + "'");
        }
        total += it->second;
    }
    report.total_partial = total;
    report.values["total_partial"] = total;
    return report;
}

}  // namespace foalkit
