// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <vector>

#include "foalkit/error.hpp"

namespace foalkit {

using CategoryId = std::uint8_t;

/// Reserved "uncertain" label id, excluded from loss and metric computation.
inline constexpr CategoryId kUncertainId = 255;

/// H x W x C raster of unit-interval intensities, row-major, interleaved channels.
/// C is 1 (NTIR / grayscale) or 3 (color).
struct LabelMap;

struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int h, int w, int c, double fill = 0.0);

    double& at(int y, int x, int c = 0) { return data[(static_cast<std::size_t>(y) * width + x) * channels + c]; }
    double at(int y, int x, int c = 0) const { return data[(static_cast<std::size_t>(y) * width + x) * channels + c]; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool same_shape(const Image& o) const { return height == o.height && width == o.width && channels == o.channels; }
    bool same_extent(const Image& o) const { return height == o.height && width == o.width; }

    /// Throws if dimensions or channel count are invalid or any value leaves [0,1].
    void validate() const;
};

/// H x W boolean raster. Stored as bytes with values 0/1.
struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int h, int w, bool fill = false);

    bool at(int y, int x) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int y, int x, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::size_t size() const { return bits.size(); }
    bool same_extent(const BinaryMask& o) const { return height == o.height && width == o.width; }
    bool same_extent(const Image& o) const { return height == o.height && width == o.width; }
    bool same_extent(const LabelMap& o) const;
};

/// H x W raster of category ids with a reserved uncertain id.
struct LabelMap {
    int height = 0;
    int width = 0;
    std::vector<CategoryId> ids;
    CategoryId uncertain_id = kUncertainId;

    LabelMap() = default;
    LabelMap(int h, int w, CategoryId fill = 0);

    CategoryId at(int y, int x) const { return ids[static_cast<std::size_t>(y) * width + x]; }
    void set(int y, int x, CategoryId v) { ids[static_cast<std::size_t>(y) * width + x] = v; }

    bool same_extent(const LabelMap& o) const { return height == o.height && width == o.width; }
    bool same_extent(const Image& o) const { return height == o.height && width == o.width; }
};

inline bool BinaryMask::same_extent(const LabelMap& o) const {
    return height == o.height && width == o.width;
}

struct BBox {
    int top = 0;
    int left = 0;
    int height = 0;
    int width = 0;
};

/// One maximal connected component of a binary mask.
/// `mask` is full-frame, `area` its popcount, `category` the source label id.
struct ConnectedRegion {
    BinaryMask mask;
    long long area = 0;
    BBox bbox;
    CategoryId category = 0;
};

}  // namespace foalkit
