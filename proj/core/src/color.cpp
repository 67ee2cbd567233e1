// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/color.hpp"

#include <algorithm>
#include <cmath>

namespace foalkit {

namespace {

void require_rgb(const Image& img, const char* op) {
    if (img.channels != 3)
        throw ChannelMismatch(std::string(op) + " expects a 3-channel image, got " + std::to_string(img.channels));
}

}  // namespace

Hsv rgb_to_hsv(double r, double g, double b) {
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;
    Hsv out{0.0, 0.0, mx};
    if (delta > 0.0) {
        double h;
        if (mx == r)
            h = (g - b) / delta;
        else if (mx == g)
            h = (b - r) / delta + 2.0;
        else
            h = (r - g) / delta + 4.0;
        h /= 6.0;
        if (h < 0.0) h += 1.0;
        if (h >= 1.0) h -= 1.0;
        out.h = h;
    }
    if (mx > 0.0) out.s = delta / mx;
    return out;
}

void hsv_to_rgb(const Hsv& hsv, double& r, double& g, double& b) {
    const double v = hsv.v;
    if (hsv.s <= 0.0) {
        r = g = b = v;
        return;
    }
    double h6 = hsv.h * 6.0;
    if (h6 >= 6.0) h6 -= 6.0;
    const int sector = std::min(5, static_cast<int>(h6));
    const double f = h6 - sector;
    const double p = v * (1.0 - hsv.s);
    const double q = v * (1.0 - hsv.s * f);
    const double t = v * (1.0 - hsv.s * (1.0 - f));
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
}

Image rgb_to_hsv(const Image& img) {
    require_rgb(img, "rgb_to_hsv");
    Image out(img.height, img.width, 3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const Hsv hsv = rgb_to_hsv(img.at(y, x, 0), img.at(y, x, 1), img.at(y, x, 2));
            out.at(y, x, 0) = hsv.h;
            out.at(y, x, 1) = hsv.s;
            out.at(y, x, 2) = hsv.v;
        }
    return out;
}

Image hsv_to_rgb(const Image& img) {
    require_rgb(img, "hsv_to_rgb");
    Image out(img.height, img.width, 3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double r, g, b;
            hsv_to_rgb(Hsv{img.at(y, x, 0), img.at(y, x, 1), img.at(y, x, 2)}, r, g, b);
            out.at(y, x, 0) = r;
            out.at(y, x, 1) = g;
            out.at(y, x, 2) = b;
        }
    return out;
}

}  // namespace foalkit
