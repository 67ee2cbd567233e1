// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/mask_ops.hpp"

#include <algorithm>

namespace foalkit {

namespace {

void require_same_extent(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_extent(b))
        throw ShapeMismatch("mask extents differ: " + std::to_string(a.height) + "x" + std::to_string(a.width) +
                            " vs " + std::to_string(b.height) + "x" + std::to_string(b.width));
}

}  // namespace

long long popcount(const BinaryMask& m) {
    long long n = 0;
    for (std::uint8_t b : m.bits) n += b ? 1 : 0;
    return n;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    require_same_extent(a, b);
    BinaryMask out(a.height, a.width);
    for (std::size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = (a.bits[i] && b.bits[i]) ? 1 : 0;
    return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    require_same_extent(a, b);
    BinaryMask out(a.height, a.width);
    for (std::size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = (a.bits[i] || b.bits[i]) ? 1 : 0;
    return out;
}

BinaryMask mask_sub(const BinaryMask& a, const BinaryMask& b) {
    require_same_extent(a, b);
    BinaryMask out(a.height, a.width);
    for (std::size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = (a.bits[i] && !b.bits[i]) ? 1 : 0;
    return out;
}

BinaryMask mask_not(const BinaryMask& a) {
    BinaryMask out(a.height, a.width);
    for (std::size_t i = 0; i < a.bits.size(); ++i) out.bits[i] = a.bits[i] ? 0 : 1;
    return out;
}

bool masks_equal(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_extent(b)) return false;
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if ((a.bits[i] != 0) != (b.bits[i] != 0)) return false;
    return true;
}

bool intersects(const BinaryMask& a, const BinaryMask& b) {
    require_same_extent(a, b);
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] && b.bits[i]) return true;
    return false;
}

BinaryMask full_mask(int height, int width) {
    return BinaryMask(height, width, true);
}

BinaryMask flip_h(const BinaryMask& m) {
    BinaryMask out(m.height, m.width);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            out.set(y, x, m.at(y, m.width - 1 - x));
    return out;
}

BinaryMask flip_v(const BinaryMask& m) {
    BinaryMask out(m.height, m.width);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            out.set(y, x, m.at(m.height - 1 - y, x));
    return out;
}

BinaryMask dilate(const BinaryMask& m, int radius) {
    if (radius <= 0) return m;
    BinaryMask out(m.height, m.width);
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(y, x)) continue;
            const int y0 = std::max(0, y - radius), y1 = std::min(m.height - 1, y + radius);
            const int x0 = std::max(0, x - radius), x1 = std::min(m.width - 1, x + radius);
            for (int yy = y0; yy <= y1; ++yy)
                for (int xx = x0; xx <= x1; ++xx)
                    out.set(yy, xx, true);
        }
    }
    return out;
}

}  // namespace foalkit
