// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>

#include "foalkit/image.hpp"

namespace foalkit {

/// 8-bit PNG I/O. Images read as grayscale (1 channel) or RGB (3 channels,
/// palette expanded, alpha dropped), values scaled to [0,1]. Label maps and
/// masks are 8-bit grayscale carrying raw bytes: category ids, and 0/255
/// respectively (any nonzero byte reads as set). All writes go through a
/// temporary file renamed into place.

Image read_image(const std::string& path);
void write_image(const Image& img, const std::string& path);

LabelMap read_labels(const std::string& path);
void write_labels(const LabelMap& labels, const std::string& path);

BinaryMask read_mask(const std::string& path);
void write_mask(const BinaryMask& mask, const std::string& path);

}  // namespace foalkit
