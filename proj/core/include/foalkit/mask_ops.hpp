// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "foalkit/image.hpp"

namespace foalkit {

long long popcount(const BinaryMask& m);

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
/// Set difference a \ b.
BinaryMask mask_sub(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_not(const BinaryMask& a);

bool masks_equal(const BinaryMask& a, const BinaryMask& b);
bool intersects(const BinaryMask& a, const BinaryMask& b);

BinaryMask full_mask(int height, int width);
BinaryMask flip_h(const BinaryMask& m);
BinaryMask flip_v(const BinaryMask& m);

/// Morphological dilation with a (2*radius+1)^2 square structuring element.
/// radius 0 returns the input unchanged.
BinaryMask dilate(const BinaryMask& m, int radius);

}  // namespace foalkit
