// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/similarity.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace foalkit {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

const std::array<double, kWindow>& gaussian_taps() {
    static const std::array<double, kWindow> taps = [] {
        std::array<double, kWindow> k{};
        double sum = 0.0;
        for (int i = 0; i < kWindow; ++i) {
            const int off = i - kRadius;
            k[i] = std::exp(-(off * off) / (2.0 * kSigma * kSigma));
            sum += k[i];
        }
        for (double& v : k) v /= sum;
        return k;
    }();
    return taps;
}

// Separable correlation of one channel plane with the Gaussian window,
// zero padding outside the image.
std::vector<double> filter_plane(const std::vector<double>& plane, int h, int w) {
    const auto& k = gaussian_taps();
    std::vector<double> tmp(plane.size(), 0.0), out(plane.size(), 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -kRadius; i <= kRadius; ++i) {
                const int xx = x + i;
                if (xx < 0 || xx >= w) continue;
                acc += k[i + kRadius] * plane[static_cast<std::size_t>(y) * w + xx];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -kRadius; i <= kRadius; ++i) {
                const int yy = y + i;
                if (yy < 0 || yy >= h) continue;
                acc += k[i + kRadius] * tmp[static_cast<std::size_t>(yy) * w + x];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

void require_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b))
        throw ShapeMismatch(std::string(op) + ": shapes differ (" + std::to_string(a.height) + "x" +
                            std::to_string(a.width) + "x" + std::to_string(a.channels) + " vs " +
                            std::to_string(b.height) + "x" + std::to_string(b.width) + "x" +
                            std::to_string(b.channels) + ")");
}

}  // namespace

double ssim_loss(const Image& a, const Image& b) {
    require_same_shape(a, b, "ssim_loss");
    const int h = a.height, w = a.width;
    const std::size_t plane_size = static_cast<std::size_t>(h) * w;

    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        std::vector<double> pa(plane_size), pb(plane_size), paa(plane_size), pbb(plane_size), pab(plane_size);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double va = a.at(y, x, c), vb = b.at(y, x, c);
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                pa[i] = va;
                pb[i] = vb;
                paa[i] = va * va;
                pbb[i] = vb * vb;
                pab[i] = va * vb;
            }
        const auto mu1 = filter_plane(pa, h, w);
        const auto mu2 = filter_plane(pb, h, w);
        const auto m11 = filter_plane(paa, h, w);
        const auto m22 = filter_plane(pbb, h, w);
        const auto m12 = filter_plane(pab, h, w);
        for (std::size_t i = 0; i < plane_size; ++i) {
            const double mu1mu2 = mu1[i] * mu2[i];
            const double sigma1 = m11[i] - mu1[i] * mu1[i];
            const double sigma2 = m22[i] - mu2[i] * mu2[i];
            const double sigma12 = m12[i] - mu1mu2;
            const double num = (2.0 * mu1mu2 + kC1) * (2.0 * sigma12 + kC2);
            const double den = (mu1[i] * mu1[i] + mu2[i] * mu2[i] + kC1) * (sigma1 + sigma2 + kC2);
            total += num / den;
        }
    }
    const double mean_ssim = total / (static_cast<double>(plane_size) * a.channels);
    return 1.0 - mean_ssim;
}

double smooth_l1_loss(const Image& a, const Image& b) {
    require_same_shape(a, b, "smooth_l1_loss");
    double total = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = std::abs(a.data[i] - b.data[i]);
        total += d < 1.0 ? 0.5 * d * d : d - 0.5;
    }
    return total / static_cast<double>(a.data.size());
}

}  // namespace foalkit
