// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/edges.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "foalkit/imageops.hpp"

namespace foalkit {

namespace {

constexpr double kMagnitudeScale = 4.0 * 1.4142135623730951;  // max |(gx,gy)| for unit-range input

struct GradientField {
    std::vector<double> magnitude;  // normalized to [0,1]
    std::vector<double> gx, gy;
};

GradientField sobel_field(const Image& img) {
    const int h = img.height, w = img.width;
    const auto clampi = [](int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); };
    const auto px = [&](int y, int x) { return img.at(clampi(y, 0, h - 1), clampi(x, 0, w - 1)); };

    GradientField f;
    f.magnitude.resize(static_cast<std::size_t>(h) * w);
    f.gx.resize(f.magnitude.size());
    f.gy.resize(f.magnitude.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (px(y - 1, x + 1) + 2.0 * px(y, x + 1) + px(y + 1, x + 1)) -
                              (px(y - 1, x - 1) + 2.0 * px(y, x - 1) + px(y + 1, x - 1));
            const double gy = (px(y + 1, x - 1) + 2.0 * px(y + 1, x) + px(y + 1, x + 1)) -
                              (px(y - 1, x - 1) + 2.0 * px(y - 1, x) + px(y - 1, x + 1));
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            f.gx[i] = gx;
            f.gy[i] = gy;
            f.magnitude[i] = std::sqrt(gx * gx + gy * gy) / kMagnitudeScale;
        }
    }
    return f;
}

void require_single_channel(const Image& img, const char* op) {
    if (img.channels != 1)
        throw ChannelMismatch(std::string(op) + " expects a 1-channel image, got " + std::to_string(img.channels));
}

}  // namespace

Image sobel_gradient(const Image& img) {
    require_single_channel(img, "sobel_gradient");
    const GradientField f = sobel_field(img);
    Image out(img.height, img.width, 1);
    out.data = f.magnitude;
    return out;
}

BinaryMask canny_edges(const Image& img, double low, double high) {
    require_single_channel(img, "canny_edges");
    if (!(low >= 0.0 && low <= high && high <= 1.0))
        throw BadThresholds("canny_edges thresholds must satisfy 0 <= low <= high <= 1, got low=" +
                            std::to_string(low) + " high=" + std::to_string(high));

    const int h = img.height, w = img.width;
    const Image smoothed = gaussian_blur(img, 1.4, 2);
    const GradientField f = sobel_field(smoothed);

    // Non-maximum suppression over four quantized directions; ties keep both.
    std::vector<std::uint8_t> thin(static_cast<std::size_t>(h) * w, 0);
    const auto mag_at = [&](int y, int x) -> double {
        if (y < 0 || y >= h || x < 0 || x >= w) return 0.0;
        return f.magnitude[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double m = f.magnitude[i];
            if (m <= 0.0) continue;
            double angle = std::atan2(f.gy[i], f.gx[i]);
            if (angle < 0.0) angle += M_PI;  // fold to [0, pi)
            double n1, n2;
            if (angle < M_PI / 8.0 || angle >= 7.0 * M_PI / 8.0) {
                n1 = mag_at(y, x - 1);
                n2 = mag_at(y, x + 1);
            } else if (angle < 3.0 * M_PI / 8.0) {
                n1 = mag_at(y - 1, x + 1);
                n2 = mag_at(y + 1, x - 1);
            } else if (angle < 5.0 * M_PI / 8.0) {
                n1 = mag_at(y - 1, x);
                n2 = mag_at(y + 1, x);
            } else {
                n1 = mag_at(y - 1, x - 1);
                n2 = mag_at(y + 1, x + 1);
            }
            if (m >= n1 && m >= n2) thin[i] = 1;
        }
    }

    // Hysteresis: strong seeds spread through weak pixels, 8-connected.
    BinaryMask edges(h, w);
    std::vector<std::uint8_t> weak(thin.size(), 0);
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!thin[i]) continue;
            const double m = f.magnitude[i];
            if (m > high) {
                edges.set(y, x, true);
                queue.emplace_back(y, x);
            } else if (m > low) {
                weak[i] = 1;
            }
        }
    static constexpr int dy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int dx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    while (!queue.empty()) {
        auto [y, x] = queue.front();
        queue.pop_front();
        for (int d = 0; d < 8; ++d) {
            const int ny = y + dy[d], nx = x + dx[d];
            if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
            const std::size_t i = static_cast<std::size_t>(ny) * w + nx;
            if (!weak[i] || edges.at(ny, nx)) continue;
            edges.set(ny, nx, true);
            queue.emplace_back(ny, nx);
        }
    }
    return edges;
}

}  // namespace foalkit
