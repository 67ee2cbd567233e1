// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <map>
#include <vector>

#include "foalkit/image.hpp"

namespace foalkit {

struct ApceConfig {
    std::vector<double> high_thresholds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double low_ratio = 0.4;
    int tolerance_radius = 1;
    /// Precision of an empty predicted edge set: 1 by default, 0 when strict.
    bool strict_empty = false;
};

/// Average precision of Canny edges across thresholds. For each high
/// threshold t, edges of the translated image (low = low_ratio * t) are
/// scored against the source edges dilated by tolerance_radius:
/// precision_t = |E_tr intersect dilate(E_src)| / |E_tr|. Returns the mean
/// over thresholds, in [0, 1].
double apce(const Image& translated, const Image& source_ntir, const ApceConfig& cfg);

struct SegReport {
    std::map<CategoryId, double> iou;  // only classes present in pred or gt
    double miou = 0.0;
};

/// Per-class intersection over union. Ground-truth pixels labeled
/// gt.uncertain_id are excluded from every count; classes absent from both
/// maps are excluded from the mean. Throws NoValidPixels when no requested
/// class has any valid pixel.
SegReport class_iou(const LabelMap& pred, const LabelMap& gt, const std::vector<CategoryId>& classes);

}  // namespace foalkit
