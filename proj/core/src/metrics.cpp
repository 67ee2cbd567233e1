// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/metrics.hpp"

#include "foalkit/edges.hpp"
#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/mask_ops.hpp"

namespace foalkit {

namespace {

void validate_config(const ApceConfig& cfg) {
    if (cfg.high_thresholds.empty()) {
        throw BadThresholds("apce: need at least one threshold");
    }
    double prev = 0.0;
    for (double t : cfg.high_thresholds) {
        if (t <= prev || t > 1.0) {
            throw BadThresholds("apce: thresholds must be strictly increasing in (0, 1]");
        }
        prev = t;
    }
    if (cfg.low_ratio <= 0.0 || cfg.low_ratio > 1.0) {
        throw BadThresholds("apce: low_ratio must be in (0, 1]");
    }
    if (cfg.tolerance_radius < 0) {
        throw BadThresholds("apce: tolerance_radius must be non-negative");
    }
}

}  // namespace

double apce(const Image& translated, const Image& source_ntir, const ApceConfig& cfg) {
    validate_config(cfg);
    if (!translated.same_extent(source_ntir)) {
        throw ShapeMismatch("apce: images must share spatial size");
    }
    const Image gray_tr = to_grayscale(translated);
    const Image gray_src = to_grayscale(source_ntir);
    double acc = 0.0;
    for (double high : cfg.high_thresholds) {
        const double low = cfg.low_ratio * high;
        const BinaryMask e_tr = canny_edges(gray_tr, low, high);
        const BinaryMask e_src = canny_edges(gray_src, low, high);
        const long long n_tr = popcount(e_tr);
        if (n_tr == 0) {
            acc += cfg.strict_empty ? 0.0 : 1.0;
            continue;
        }
        const BinaryMask tolerant = dilate(e_src, cfg.tolerance_radius);
        const long long hits = popcount(mask_and(e_tr, tolerant));
        acc += static_cast<double>(hits) / static_cast<double>(n_tr);
    }
    return acc / static_cast<double>(cfg.high_thresholds.size());
}

SegReport class_iou(const LabelMap& pred, const LabelMap& gt, const std::vector<CategoryId>& classes) {
    if (pred.height != gt.height || pred.width != gt.width) {
        throw ShapeMismatch("class_iou: label maps must share size");
    }
    SegReport report;
    double sum = 0.0;
    int present = 0;
    for (CategoryId c : classes) {
        long long inter = 0;
        long long uni = 0;
        for (int y = 0; y < gt.height; ++y) {
            for (int x = 0; x < gt.width; ++x) {
                if (gt.at(y, x) == gt.uncertain_id) {
                    continue;
                }
                const bool in_pred = pred.at(y, x) == c;
                const bool in_gt = gt.at(y, x) == c;
                if (in_pred && in_gt) {
                    ++inter;
                }
                if (in_pred || in_gt) {
                    ++uni;
                }
            }
        }
        if (uni == 0) {
            continue;
        }
        const double iou = static_cast<double>(inter) / static_cast<double>(uni);
        report.iou[c] = iou;
        sum += iou;
        ++present;
    }
    if (present == 0) {
        throw NoValidPixels("class_iou: no requested class has valid pixels");
    }
    report.miou = sum / static_cast<double>(present);
    return report;
}

}  // namespace foalkit
