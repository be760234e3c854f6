/*
 *  Copyright 2026 The wxbench Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "wxbench/raster.hpp"
#include "wxbench/weather_class.hpp"

namespace wxbench::synth {

struct FogParams {
    double density = 0.30;     // d in (0,1]
    std::uint8_t airlight = 240;
    double noise_scale = 64.0; // value-noise lattice spacing, pixels
};

struct RainParams {
    double streaks_per_megapixel = 350.0;
    double streak_length = 12.0;   // pixels, jittered +-25% per streak
    double angle_min_deg = -20.0;  // sampled once per image, from vertical
    double angle_max_deg = -10.0;
    double alpha = 0.55;
};

struct SnowParams {
    double flakes_per_megapixel = 800.0;
    double radius_min = 1.0;
    double radius_max = 3.0;
    double brightness_min = 230.0;
    double brightness_max = 255.0;
    double alpha = 0.55;
};

struct ExposureParams {
    double dark_gamma = 1.8;
    double over_gain = 1.5;
};

/// Frozen per-level tables; \p level in [1,3].
FogParams fog_params(int level);
RainParams rain_params(int level);
SnowParams snow_params(int level);
ExposureParams exposure_params(int level);

inline constexpr double kRainColor = 225.0;

/// Seeded value noise in [0,1] at pixel (x,y), smoothstep-bilinear between
/// lattice points spaced \p scale pixels apart.
class ValueNoise {
public:
    ValueNoise(int width, int height, double scale, std::uint64_t seed);

    /// Samples one full row into \p out (size = width).
    void sample_row(int y, std::vector<double>& out) const;

    int lattice_width() const noexcept { return lattice_w_; }
    int lattice_height() const noexcept { return lattice_h_; }

private:
    int width_;
    double scale_;
    int lattice_w_;
    int lattice_h_;
    std::vector<double> lattice_;
    std::vector<int> cell_x_;
    std::vector<double> weight_x_;
};

/// I' = t*I + (1-t)*A, t = 1 - d*(0.3 + 0.7*P). Density 0 is accepted
/// here and yields the input unchanged.
ImageBuffer apply_fog(const ImageBuffer& image, const FogParams& params, std::uint64_t seed);
ImageBuffer apply_rain(const ImageBuffer& image, const RainParams& params, std::uint64_t seed);
ImageBuffer apply_snow(const ImageBuffer& image, const SnowParams& params, std::uint64_t seed);

/// round(255*(I/255)^gamma) per sample.
ImageBuffer apply_dark(const ImageBuffer& image, double gamma);
/// min(255, round(gain*I)) per sample.
ImageBuffer apply_overexposure(const ImageBuffer& image, double gain);

/// Sub-seed handed to constituent \p part of mixed class \p mixed.
std::uint64_t constituent_seed(const WeatherSpec& mixed, WeatherClass part);

/// Single classes dispatch directly. Mixed classes apply fog before
/// precipitation and rain before snow, each at the spec's level with a
/// constituent_seed. Clean returns the input.
ImageBuffer degrade(const ImageBuffer& image, const WeatherSpec& spec);

} // namespace wxbench::synth
