// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/image.hpp"

#include <string>

namespace foalkit {

Image::Image(int h, int w, int c, double fill)
    : height(h), width(w), channels(c),
      data(static_cast<std::size_t>(h) * w * c, fill) {}

void Image::validate() const {
    if (height <= 0 || width <= 0)
        throw ShapeMismatch("image extent must be positive, got " + std::to_string(height) + "x" + std::to_string(width));
    if (channels != 1 && channels != 3)
        throw ChannelMismatch("image must have 1 or 3 channels, got " + std::to_string(channels));
    if (data.size() != static_cast<std::size_t>(height) * width * channels)
        throw ShapeMismatch("image buffer size does not match declared shape");
    for (double v : data) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ShapeMismatch("image value outside [0,1]: " + std::to_string(v));
    }
}

BinaryMask::BinaryMask(int h, int w, bool fill)
    : height(h), width(w), bits(static_cast<std::size_t>(h) * w, fill ? 1 : 0) {}

LabelMap::LabelMap(int h, int w, CategoryId fill)
    : height(h), width(w), ids(static_cast<std::size_t>(h) * w, fill) {}

}  // namespace foalkit
