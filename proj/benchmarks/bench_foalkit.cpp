// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include <benchmark/benchmark.h>

#include "foalkit/config.hpp"
#include "foalkit/edges.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/losses.hpp"
#include "foalkit/mask_ops.hpp"
#include "foalkit/metrics.hpp"
#include "foalkit/oamix.hpp"
#include "foalkit/similarity.hpp"
#include "foalkit/trafficlight.hpp"

namespace {

using namespace foalkit;

constexpr int kH = 288;
constexpr int kW = 360;

Image synthetic_image(int h, int w, int c, std::uint64_t salt) {
    Image img(h, w, c);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int k = 0; k < c; ++k) {
                const std::uint64_t v = (static_cast<std::uint64_t>(y) * 731 + x * 37 + k * 101 + salt) % 997;
                img.at(y, x, k) = static_cast<double>(v) / 996.0;
            }
        }
    }
    return img;
}

BinaryMask block_mask(int h, int w, int top, int left, int bh, int bw) {
    BinaryMask m(h, w);
    for (int y = top; y < top + bh; ++y) {
        for (int x = left; x < left + bw; ++x) {
            m.set(y, x, true);
        }
    }
    return m;
}

void bm_ssim_loss(benchmark::State& state) {
    const Image a = synthetic_image(kH, kW, 1, 1);
    const Image b = synthetic_image(kH, kW, 1, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssim_loss(a, b));
    }
}
BENCHMARK(bm_ssim_loss);

void bm_canny_edges(benchmark::State& state) {
    const Image img = synthetic_image(kH, kW, 1, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(canny_edges(img, 0.08, 0.2));
    }
}
BENCHMARK(bm_canny_edges);

void bm_midf(benchmark::State& state) {
    const Image rec = synthetic_image(kH, kW, 3, 4);
    const Image ori = synthetic_image(kH, kW, 3, 5);
    const BinaryMask m = block_mask(kH, kW, 40, 40, 160, 240);
    const LossWeights w;
    for (auto _ : state) {
        benchmark::DoNotOptimize(midf(m, rec, ori, w));
    }
}
BENCHMARK(bm_midf);

void bm_compose_mix_b(benchmark::State& state) {
    const Image x_fb = synthetic_image(kH, kW, 1, 6);
    const Image x_rb = synthetic_image(kH, kW, 1, 7);
    const BinaryMask q_o = block_mask(kH, kW, 30, 30, 48, 48);
    const BinaryMask q_f = flip_h(q_o);
    const BinaryMask road = block_mask(kH, kW, kH - 60, 0, 60, kW);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose_mix_b(x_fb, x_rb, q_o, q_f, road));
    }
}
BENCHMARK(bm_compose_mix_b);

void bm_select_mix_regions(benchmark::State& state) {
    const CategoryConfig cfg = default_config().categories;
    LabelMap fake(kH, kW, 1);
    for (int y = kH - 60; y < kH; ++y) {
        for (int x = 0; x < kW; ++x) {
            fake.set(y, x, 0);
        }
    }
    for (int k = 0; k < 12; ++k) {
        const int top = 20 + (k % 4) * 50;
        const int left = 20 + (k / 4) * 100;
        for (int y = top; y < top + 16; ++y) {
            for (int x = left; x < left + 16; ++x) {
                fake.set(y, x, k % 2 == 0 ? 10 : 11);
            }
        }
    }
    const BinaryMask obj(kH, kW);
    const BinaryMask road = block_mask(kH, kW, kH - 60, 0, 60, kW);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_mix_regions(fake, obj, road, cfg));
    }
}
BENCHMARK(bm_select_mix_regions);

void bm_apce(benchmark::State& state) {
    const Image translated = synthetic_image(kH, kW, 3, 8);
    const Image source = synthetic_image(kH, kW, 1, 8);
    const ApceConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apce(translated, source, cfg));
    }
}
BENCHMARK(bm_apce);

void bm_convert_color(benchmark::State& state) {
    Image crop(24, 60, 3);
    for (int y = 0; y < 24; ++y) {
        for (int x = 0; x < 60; ++x) {
            crop.at(y, x, 0) = 0.85;
            crop.at(y, x, 1) = 0.2;
            crop.at(y, x, 2) = 0.15;
        }
    }
    const TlColorParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(convert_color(crop, params));
    }
}
BENCHMARK(bm_convert_color);

}  // namespace

BENCHMARK_MAIN();
