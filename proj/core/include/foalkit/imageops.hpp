// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <set>
#include <vector>

#include "foalkit/image.hpp"

namespace foalkit {

/// 3-channel input is reduced with BT.601 luma weights (0.299, 0.587, 0.114);
/// 1-channel input is returned unchanged.
Image to_grayscale(const Image& img);

/// Arithmetic mean of 1-channel pixels where the mask is set. Throws EmptyMask.
double masked_mean(const Image& img, const BinaryMask& m);

/// Minimum of 1-channel pixels where the mask is set. Throws EmptyMask.
double masked_min(const Image& img, const BinaryMask& m);

Image flip_h(const Image& img);
Image flip_v(const Image& img);
LabelMap flip_h(const LabelMap& labels);

/// Channel-broadcast elementwise product mask (.) img.
Image multiply_mask(const Image& img, const BinaryMask& m);

/// Separable Gaussian blur with a sampled kernel of the given radius
/// (window 2*radius+1) and replicated borders.
Image gaussian_blur(const Image& img, double sigma, int radius);

/// Maximal 8-connected components of the set pixels, ordered by their
/// top-left-most pixel in row-major order. `category` stamps the outputs.
std::vector<ConnectedRegion> connected_components(const BinaryMask& m, CategoryId category = 0);

/// Pixels whose label equals `id`.
BinaryMask category_mask(const LabelMap& labels, CategoryId id);

/// Pixels whose label is in `ids`.
BinaryMask categories_mask(const LabelMap& labels, const std::set<CategoryId>& ids);

}  // namespace foalkit
