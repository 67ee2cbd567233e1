// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <map>
#include <string>

#include "foalkit/image.hpp"

namespace foalkit {

struct LossWeights {
    double lambda_sl1 = 10.0;
    double lambda_sga = 0.5;
    double theta_tem = 0.25;
    double theta_sim = 0.8;
};

/// Deterministic auxiliary penalty: (map, map) -> non-negative real, zero on
/// identical inputs. Slot for the structured-gradient-alignment and
/// conditional-gradient-repair terms, which come from prior work; the
/// defaults below are documented stand-ins, not the original formulations.
using PenaltyHook = std::function<double(const Image&, const Image&)>;

/// Stand-in SGA penalty: mean absolute difference between the masked
/// gradient map and the (0/1) edge map.
double default_sga_penalty(const Image& gradient_map, const Image& edge_map);

/// Stand-in CGR penalty: smooth-L1 between Sobel magnitudes of the two
/// context images (each grayscaled first, so cross-channel pairs are fine).
double default_cgr_penalty(const Image& context_a, const Image& context_b);

/// Mask-based image distance: ssim_loss(m.rec, m.ori) + lambda_sl1 *
/// smooth_l1_loss(m.rec, m.ori), the mask broadcast across channels.
double midf(const BinaryMask& mask, const Image& rec, const Image& ori, const LossWeights& w);

/// Hinge pushing the minimum of the bright streetlight pixels above the
/// vegetation mean by theta_tem: max(mean_veg - min_sl + theta_tem, 0).
double street_light_luminance_loss(const Image& x_fb, const BinaryMask& sl_bright, const BinaryMask& veg,
                                   const LossWeights& w);

/// Cosine hinge between the mean-centered, mask-restricted luminance
/// patterns of the DC grayscale and the fake NTIR image:
/// max(theta_sim - cos(V_ra, V_fb), 0). Either pattern having zero norm
/// yields theta_sim (maximal dissimilarity).
double traffic_light_luminance_adjust_loss(const Image& gray_ra, const Image& x_fb, const BinaryMask& tl_mask,
                                           const LossWeights& w);

/// Sum of the two luminance hinges plus the weighted SGA penalty on the
/// lights-masked gradient/edge maps.
double artifact_bias_correction_loss(const Image& x_fb, const BinaryMask& sl_bright, const BinaryMask& veg,
                                     const Image& gray_ra, const BinaryMask& tl_mask,
                                     const Image& gradient_map_lights, const Image& edge_map_lights,
                                     const PenaltyHook& sga, const LossWeights& w);

/// MIDF over the small-object mask between reconstruction and original.
double color_bias_correction_loss(const BinaryMask& m_soc, const Image& x_rec, const Image& x_ra,
                                  const LossWeights& w);

/// MIDF over the pasted-object mask between the translated mix and the
/// target-domain real image.
double appearance_consistency_a(const BinaryMask& q_ao, const Image& x_ab_mix, const Image& x_rb,
                                const LossWeights& w);

/// Domain-B appearance consistency: MIDF on pasted objects plus the CGR
/// penalty on the masked context pair.
double appearance_consistency_b(const BinaryMask& q_bo, const BinaryMask& q_con, const Image& x_ba_mix,
                                const Image& x_ra, const Image& x_rb, const PenaltyHook& cgr,
                                const LossWeights& w);

/// Named scalar report. `total_partial` aggregates the model-free part of
/// the objective: (abc + cbc) + (ac_a + ac_b) + (tll + tlc).
struct LossReport {
    std::map<std::string, double> values;
    double total_partial = 0.0;
};

/// Leaf keys every aggregate call must provide.
const std::vector<std::string>& aggregate_leaf_terms();

/// Builds the report from named leaf terms. Throws MissingTerm when a leaf
/// from aggregate_leaf_terms() is absent. Extra informational entries
/// (e.g. sla, tla_cos) are carried through untouched.
LossReport aggregate(const std::map<std::string, double>& terms, const LossWeights& w);

}  // namespace foalkit
