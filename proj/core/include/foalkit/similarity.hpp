// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "foalkit/image.hpp"

namespace foalkit {

/// 1 - mean local SSIM over all pixels and channels. 11x11 Gaussian window
/// (sigma 1.5), K1=0.01, K2=0.03, dynamic range 1, zero-padded borders.
/// Result lies in [0,2]; identical inputs give exactly 0.
double ssim_loss(const Image& a, const Image& b);

/// Mean Huber distance over all elements: 0.5*d^2 for |d|<1, |d|-0.5 otherwise.
double smooth_l1_loss(const Image& a, const Image& b);

}  // namespace foalkit
