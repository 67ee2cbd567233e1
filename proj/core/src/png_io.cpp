// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "foalkit/error.hpp"

namespace foalkit {

namespace {

struct ReadResult {
    std::vector<png_byte> bytes;
    int height = 0;
    int width = 0;
    int channels = 0;
};

ReadResult read_png(const std::string& path, bool force_gray) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw IoError("cannot read '" + path + "': " + png.message);
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    ReadResult out;
    if (force_gray) {
        if (color) {
            png_image_free(&png);
            throw IoError("'" + path + "': expected a grayscale PNG");
        }
        png.format = PNG_FORMAT_GRAY;
        out.channels = 1;
    } else {
        png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
        out.channels = color ? 3 : 1;
    }
    out.height = static_cast<int>(png.height);
    out.width = static_cast<int>(png.width);
    out.bytes.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, out.bytes.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("cannot decode '" + path + "': " + msg);
    }
    return out;
}

void write_png(const std::string& path, const png_byte* bytes, int height, int width, int channels) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.height = static_cast<png_uint_32>(height);
    png.width = static_cast<png_uint_32>(width);
    png.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::string tmp = path + ".tmp";
    if (!png_image_write_to_file(&png, tmp.c_str(), 0, bytes, 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        std::remove(tmp.c_str());
        throw IoError("cannot write '" + path + "': " + msg);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move temporary file into '" + path + "'");
    }
}

png_byte quantize(double v) {
    const double scaled = std::lround(std::min(std::max(v, 0.0), 1.0) * 255.0);
    return static_cast<png_byte>(scaled);
}

}  // namespace

Image read_image(const std::string& path) {
    const ReadResult raw = read_png(path, false);
    Image img(raw.height, raw.width, raw.channels);
    for (std::size_t i = 0; i < raw.bytes.size(); ++i) {
        img.data[i] = static_cast<double>(raw.bytes[i]) / 255.0;
    }
    return img;
}

void write_image(const Image& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3) {
        throw ChannelMismatch("write_image: only 1- or 3-channel images are supported");
    }
    std::vector<png_byte> bytes(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        bytes[i] = quantize(img.data[i]);
    }
    write_png(path, bytes.data(), img.height, img.width, img.channels);
}

LabelMap read_labels(const std::string& path) {
    const ReadResult raw = read_png(path, true);
    LabelMap labels(raw.height, raw.width);
    for (std::size_t i = 0; i < raw.bytes.size(); ++i) {
        labels.ids[i] = static_cast<CategoryId>(raw.bytes[i]);
    }
    return labels;
}

void write_labels(const LabelMap& labels, const std::string& path) {
    std::vector<png_byte> bytes(labels.ids.begin(), labels.ids.end());
    write_png(path, bytes.data(), labels.height, labels.width, 1);
}

BinaryMask read_mask(const std::string& path) {
    const ReadResult raw = read_png(path, true);
    BinaryMask mask(raw.height, raw.width);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (raw.bytes[static_cast<std::size_t>(y) * mask.width + x] != 0) {
                mask.set(y, x, true);
            }
        }
    }
    return mask;
}

void write_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<png_byte> bytes(static_cast<std::size_t>(mask.height) * mask.width, 0);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (mask.at(y, x)) {
                bytes[static_cast<std::size_t>(y) * mask.width + x] = 255;
            }
        }
    }
    write_png(path, bytes.data(), mask.height, mask.width, 1);
}

}  // namespace foalkit
