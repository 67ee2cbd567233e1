// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "foalkit/image.hpp"

namespace foalkit {

/// Sobel gradient magnitude of a 1-channel image, normalized by the
/// theoretical maximum (4*sqrt(2)) so the result lies in [0,1].
/// Borders are replicated.
Image sobel_gradient(const Image& img);

/// Canny pipeline on a 1-channel image: 5x5 Gaussian blur (sigma 1.4),
/// Sobel gradients, non-maximum suppression, hysteresis. Thresholds apply to
/// the normalized gradient magnitude and must satisfy 0 <= low <= high <= 1;
/// otherwise BadThresholds is thrown. Deterministic.
BinaryMask canny_edges(const Image& img, double low, double high);

}  // namespace foalkit
