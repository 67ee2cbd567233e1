// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "foalkit/image.hpp"

namespace foalkit {

struct Hsv {
    double h;  // [0,1)
    double s;  // [0,1]
    double v;  // [0,1]
};

Hsv rgb_to_hsv(double r, double g, double b);
void hsv_to_rgb(const Hsv& hsv, double& r, double& g, double& b);

/// Standard hexcone conversion, hue normalized to [0,1). Throws ChannelMismatch
/// unless the input has 3 channels. Round-trips within 1e-6 per channel.
Image rgb_to_hsv(const Image& img);
Image hsv_to_rgb(const Image& img);

}  // namespace foalkit
