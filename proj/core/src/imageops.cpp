// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/imageops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace foalkit {

namespace {

void require_extent(const Image& img, const BinaryMask& m) {
    if (!m.same_extent(img))
        throw ShapeMismatch("image and mask extents differ: " + std::to_string(img.height) + "x" +
                            std::to_string(img.width) + " vs " + std::to_string(m.height) + "x" +
                            std::to_string(m.width));
}

void require_single_channel(const Image& img, const char* op) {
    if (img.channels != 1)
        throw ChannelMismatch(std::string(op) + " expects a 1-channel image, got " + std::to_string(img.channels));
}

}  // namespace

Image to_grayscale(const Image& img) {
    if (img.channels == 1) return img;
    if (img.channels != 3)
        throw ChannelMismatch("to_grayscale expects 1 or 3 channels, got " + std::to_string(img.channels));
    Image out(img.height, img.width, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(y, x) = 0.299 * img.at(y, x, 0) + 0.587 * img.at(y, x, 1) + 0.114 * img.at(y, x, 2);
    return out;
}

double masked_mean(const Image& img, const BinaryMask& m) {
    require_single_channel(img, "masked_mean");
    require_extent(img, m);
    double sum = 0.0;
    long long n = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!m.at(y, x)) continue;
            sum += img.at(y, x);
            ++n;
        }
    }
    if (n == 0) throw EmptyMask("masked_mean over an empty mask");
    return sum / static_cast<double>(n);
}

double masked_min(const Image& img, const BinaryMask& m) {
    require_single_channel(img, "masked_min");
    require_extent(img, m);
    double best = std::numeric_limits<double>::infinity();
    long long n = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!m.at(y, x)) continue;
            best = std::min(best, img.at(y, x));
            ++n;
        }
    }
    if (n == 0) throw EmptyMask("masked_min over an empty mask");
    return best;
}

Image flip_h(const Image& img) {
    Image out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
    return out;
}

Image flip_v(const Image& img) {
    Image out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(y, x, c) = img.at(img.height - 1 - y, x, c);
    return out;
}

LabelMap flip_h(const LabelMap& labels) {
    LabelMap out(labels.height, labels.width);
    out.uncertain_id = labels.uncertain_id;
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x)
            out.set(y, x, labels.at(y, labels.width - 1 - x));
    return out;
}

Image multiply_mask(const Image& img, const BinaryMask& m) {
    require_extent(img, m);
    Image out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (m.at(y, x))
                for (int c = 0; c < img.channels; ++c)
                    out.at(y, x, c) = img.at(y, x, c);
    return out;
}

Image gaussian_blur(const Image& img, double sigma, int radius) {
    if (radius <= 0 || sigma <= 0.0) return img;
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;

    const auto clampi = [](int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); };
    Image tmp(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i)
                    acc += k[i + radius] * img.at(y, clampi(x + i, 0, img.width - 1), c);
                tmp.at(y, x, c) = acc;
            }
    Image out(img.height, img.width, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i)
                    acc += k[i + radius] * tmp.at(clampi(y + i, 0, img.height - 1), x, c);
                out.at(y, x, c) = acc;
            }
    return out;
}

std::vector<ConnectedRegion> connected_components(const BinaryMask& m, CategoryId category) {
    std::vector<ConnectedRegion> regions;
    std::vector<std::uint8_t> seen(m.bits.size(), 0);
    static constexpr int dy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int dx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

    for (int sy = 0; sy < m.height; ++sy) {
        for (int sx = 0; sx < m.width; ++sx) {
            const std::size_t start = static_cast<std::size_t>(sy) * m.width + sx;
            if (!m.bits[start] || seen[start]) continue;

            ConnectedRegion region;
            region.mask = BinaryMask(m.height, m.width);
            region.category = category;
            int top = sy, bottom = sy, left = sx, right = sx;

            std::deque<std::pair<int, int>> queue;
            queue.emplace_back(sy, sx);
            seen[start] = 1;
            while (!queue.empty()) {
                auto [y, x] = queue.front();
                queue.pop_front();
                region.mask.set(y, x, true);
                ++region.area;
                top = std::min(top, y);
                bottom = std::max(bottom, y);
                left = std::min(left, x);
                right = std::max(right, x);
                for (int d = 0; d < 8; ++d) {
                    const int ny = y + dy[d], nx = x + dx[d];
                    if (ny < 0 || ny >= m.height || nx < 0 || nx >= m.width) continue;
                    const std::size_t idx = static_cast<std::size_t>(ny) * m.width + nx;
                    if (!m.bits[idx] || seen[idx]) continue;
                    seen[idx] = 1;
                    queue.emplace_back(ny, nx);
                }
            }
            region.bbox = BBox{top, left, bottom - top + 1, right - left + 1};
            regions.push_back(std::move(region));
        }
    }
    return regions;
}

BinaryMask category_mask(const LabelMap& labels, CategoryId id) {
    BinaryMask out(labels.height, labels.width);
    for (std::size_t i = 0; i < labels.ids.size(); ++i) out.bits[i] = labels.ids[i] == id ? 1 : 0;
    return out;
}

BinaryMask categories_mask(const LabelMap& labels, const std::set<CategoryId>& ids) {
    BinaryMask out(labels.height, labels.width);
    for (std::size_t i = 0; i < labels.ids.size(); ++i) out.bits[i] = ids.count(labels.ids[i]) ? 1 : 0;
    return out;
}

}  // namespace foalkit
