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

#include "wxbench/weather.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wxbench/error.hpp"
#include "wxbench/rng.hpp"
#include "wxbench/seed.hpp"

namespace wxbench::synth {

namespace {

std::size_t level_index(int level) {
    if (level < kMinLevel || level > kMaxLevel) {
        throw Error(ErrorKind::InvalidArgument,
                    "weather level must be in [1,3], got " + std::to_string(level));
    }
    return std::size_t(level - kMinLevel);
}

std::uint8_t quantize(double v) {
    return std::uint8_t(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

std::int64_t primitive_count(double per_megapixel, const ImageBuffer& image) {
    return std::int64_t(std::llround(per_megapixel * double(image.pixel_count()) / 1.0e6));
}

/// Single-channel float canvas for streak rendering.
class Layer {
public:
    Layer(int width, int height)
        : width_(width), height_(height), v_(std::size_t(width) * std::size_t(height), 0.0) {}

    double get(int x, int y) const {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return 0.0;
        return v_[std::size_t(y) * std::size_t(width_) + std::size_t(x)];
    }

    void max_into(int x, int y, double value) {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
        auto& cell = v_[std::size_t(y) * std::size_t(width_) + std::size_t(x)];
        cell = std::max(cell, value);
    }

    /// Anti-aliased point: bilinear weights onto the 4 nearest pixels.
    void splat(double px, double py, double intensity) {
        const double fx = std::floor(px), fy = std::floor(py);
        const double u = px - fx, v = py - fy;
        const int x0 = int(fx), y0 = int(fy);
        max_into(x0, y0, intensity * (1.0 - u) * (1.0 - v));
        max_into(x0 + 1, y0, intensity * u * (1.0 - v));
        max_into(x0, y0 + 1, intensity * (1.0 - u) * v);
        max_into(x0 + 1, y0 + 1, intensity * u * v);
    }

    double bilinear(double px, double py) const {
        const double fx = std::floor(px), fy = std::floor(py);
        const double u = px - fx, v = py - fy;
        const int x0 = int(fx), y0 = int(fy);
        const double top = get(x0, y0) + (get(x0 + 1, y0) - get(x0, y0)) * u;
        const double bottom = get(x0, y0 + 1) + (get(x0 + 1, y0 + 1) - get(x0, y0 + 1)) * u;
        return top + (bottom - top) * v;
    }

private:
    int width_, height_;
    std::vector<double> v_;
};

} // namespace

FogParams fog_params(int level) {
    static constexpr std::array<double, 3> kDensity = {0.30, 0.55, 0.80};
    return FogParams{kDensity[level_index(level)], 240, 64.0};
}

RainParams rain_params(int level) {
    static constexpr std::array<double, 3> kStreaks = {350.0, 700.0, 1200.0};
    static constexpr std::array<double, 3> kLength = {12.0, 18.0, 26.0};
    static constexpr std::array<double, 3> kAlpha = {0.55, 0.70, 0.85};
    const auto i = level_index(level);
    return RainParams{kStreaks[i], kLength[i], -20.0, -10.0, kAlpha[i]};
}

SnowParams snow_params(int level) {
    static constexpr std::array<double, 3> kFlakes = {800.0, 1800.0, 3200.0};
    static constexpr std::array<double, 3> kAlpha = {0.55, 0.70, 0.85};
    const auto i = level_index(level);
    return SnowParams{kFlakes[i], 1.0, 3.0, 230.0, 255.0, kAlpha[i]};
}

ExposureParams exposure_params(int level) {
    static constexpr std::array<double, 3> kGamma = {1.8, 2.5, 3.2};
    static constexpr std::array<double, 3> kGain = {1.5, 2.0, 2.6};
    const auto i = level_index(level);
    return ExposureParams{kGamma[i], kGain[i]};
}

ImageBuffer apply_fog(const ImageBuffer& image, const FogParams& params, std::uint64_t seed) {
    const ValueNoise noise(image.width(), image.height(), params.noise_scale, seed);
    const double airlight = double(params.airlight);
    const auto channels = std::size_t(image.channels());
    ImageBuffer out = image;
    auto dst = out.data();
    const auto src = image.data();
    std::vector<double> row;
    for (int y = 0; y < image.height(); ++y) {
        noise.sample_row(y, row);
        const auto base = std::size_t(y) * std::size_t(image.width()) * channels;
        for (std::size_t x = 0; x < row.size(); ++x) {
            const double t = 1.0 - params.density * (0.3 + 0.7 * row[x]);
            for (std::size_t c = 0; c < channels; ++c) {
                const auto i = base + x * channels + c;
                dst[i] = quantize(t * double(src[i]) + (1.0 - t) * airlight);
            }
        }
    }
    return out;
}

ImageBuffer apply_rain(const ImageBuffer& image, const RainParams& params, std::uint64_t seed) {
    const std::int64_t count = primitive_count(params.streaks_per_megapixel, image);
    if (count <= 0 || params.alpha <= 0.0) return image;

    Rng rng(seed);
    const double angle =
        rng.uniform(params.angle_min_deg, params.angle_max_deg) * std::numbers::pi / 180.0;
    const double dx = std::sin(angle), dy = std::cos(angle);
    const int w = image.width(), h = image.height();

    Layer streaks(w, h);
    for (std::int64_t s = 0; s < count; ++s) {
        const double length = params.streak_length * rng.uniform(0.75, 1.25);
        const double x0 = rng.uniform(0.0, double(w) + length);
        const double y0 = rng.uniform(-length, double(h));
        const double intensity = rng.uniform(0.6, 1.0);
        const int steps = int(std::ceil(2.0 * length));
        for (int k = 0; k <= steps; ++k) {
            const double f = length * double(k) / double(steps);
            streaks.splat(x0 + dx * f, y0 + dy * f, intensity);
        }
    }

    // 3-tap box blur along the streak direction, then composite.
    const auto channels = std::size_t(image.channels());
    ImageBuffer out = image;
    auto dst = out.data();
    const auto src = image.data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double blurred = (streaks.bilinear(x - dx, y - dy) + streaks.get(x, y) +
                                    streaks.bilinear(x + dx, y + dy)) /
                                   3.0;
            const double a = params.alpha * blurred;
            const auto base = (std::size_t(y) * std::size_t(w) + std::size_t(x)) * channels;
            for (std::size_t c = 0; c < channels; ++c) {
                const double v = double(src[base + c]);
                dst[base + c] = quantize(v + a * (kRainColor - v));
            }
        }
    }
    return out;
}

ImageBuffer apply_snow(const ImageBuffer& image, const SnowParams& params, std::uint64_t seed) {
    const std::int64_t count = primitive_count(params.flakes_per_megapixel, image);
    if (count <= 0 || params.alpha <= 0.0) return image;

    const int w = image.width(), h = image.height();
    const auto channels = std::size_t(image.channels());
    const auto src = image.data();
    std::vector<double> canvas(src.begin(), src.end());

    Rng rng(seed);
    for (std::int64_t s = 0; s < count; ++s) {
        const double cx = rng.uniform(0.0, double(w));
        const double cy = rng.uniform(0.0, double(h));
        const double radius = rng.uniform(params.radius_min, params.radius_max);
        const double brightness = rng.uniform(params.brightness_min, params.brightness_max);
        const int x_lo = std::max(0, int(std::floor(cx - radius - 1.0)));
        const int x_hi = std::min(w - 1, int(std::ceil(cx + radius + 1.0)));
        const int y_lo = std::max(0, int(std::floor(cy - radius - 1.0)));
        const int y_hi = std::min(h - 1, int(std::ceil(cy + radius + 1.0)));
        for (int y = y_lo; y <= y_hi; ++y) {
            for (int x = x_lo; x <= x_hi; ++x) {
                const double dist = std::hypot(double(x) + 0.5 - cx, double(y) + 0.5 - cy);
                const double coverage = std::clamp(radius + 0.5 - dist, 0.0, 1.0);
                if (coverage <= 0.0) continue;
                const double a = params.alpha * coverage;
                const auto base = (std::size_t(y) * std::size_t(w) + std::size_t(x)) * channels;
                for (std::size_t c = 0; c < channels; ++c) {
                    auto& v = canvas[base + c];
                    v += a * (brightness - v);
                }
            }
        }
    }

    ImageBuffer out = image;
    auto dst = out.data();
    for (std::size_t i = 0; i < canvas.size(); ++i) dst[i] = quantize(canvas[i]);
    return out;
}

namespace {

ImageBuffer apply_lut(const ImageBuffer& image, const std::array<std::uint8_t, 256>& lut) {
    ImageBuffer out = image;
    for (auto& v : out.data()) v = lut[v];
    return out;
}

} // namespace

ImageBuffer apply_dark(const ImageBuffer& image, double gamma) {
    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v) {
        lut[std::size_t(v)] = quantize(255.0 * std::pow(double(v) / 255.0, gamma));
    }
    return apply_lut(image, lut);
}

ImageBuffer apply_overexposure(const ImageBuffer& image, double gain) {
    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v) lut[std::size_t(v)] = quantize(gain * double(v));
    return apply_lut(image, lut);
}

std::uint64_t constituent_seed(const WeatherSpec& mixed, WeatherClass part) {
    return derive_seed(mixed.seed, tag_of(mixed.weather), part, mixed.level);
}

namespace {

ImageBuffer apply_single(const ImageBuffer& image, WeatherClass weather, int level,
                         std::uint64_t seed) {
    switch (weather) {
    case WeatherClass::Fog: return apply_fog(image, fog_params(level), seed);
    case WeatherClass::Rain: return apply_rain(image, rain_params(level), seed);
    case WeatherClass::Snow: return apply_snow(image, snow_params(level), seed);
    case WeatherClass::Dark: return apply_dark(image, exposure_params(level).dark_gamma);
    case WeatherClass::Overexposure:
        return apply_overexposure(image, exposure_params(level).over_gain);
    default: return image;
    }
}

} // namespace

ImageBuffer degrade(const ImageBuffer& image, const WeatherSpec& spec) {
    WeatherClass first = spec.weather, second = spec.weather;
    switch (spec.weather) {
    case WeatherClass::Clean: return image;
    case WeatherClass::FogRain: first = WeatherClass::Fog; second = WeatherClass::Rain; break;
    case WeatherClass::FogSnow: first = WeatherClass::Fog; second = WeatherClass::Snow; break;
    case WeatherClass::RainSnow: first = WeatherClass::Rain; second = WeatherClass::Snow; break;
    default: return apply_single(image, spec.weather, spec.level, spec.seed);
    }
    const auto stage = apply_single(image, first, spec.level, constituent_seed(spec, first));
    return apply_single(stage, second, spec.level, constituent_seed(spec, second));
}

} // namespace wxbench::synth
