// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <random>

namespace foalkit {

// Distribution helpers with engine-defined, platform-independent output,
// unlike std::uniform_*_distribution whose mapping is implementation-specific.

/// Uniform double in [0,1) using the top 53 bits of one engine draw.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0,n) via fixed-point multiply of one engine draw.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace foalkit
