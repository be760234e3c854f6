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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wxbench {

/// Row-major 8-bit raster with 1 or 3 interleaved channels, at least 8x8.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, int channels);
    ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return std::size_t(width_) * std::size_t(height_); }

    std::span<const std::uint8_t> data() const noexcept { return data_; }
    std::span<std::uint8_t> data() noexcept { return data_; }

    std::uint8_t at(int x, int y, int c) const noexcept {
        return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * std::size_t(channels_) + std::size_t(c)];
    }

    bool operator==(const ImageBuffer&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Single-channel 8-bit raster shared by masks and saliency maps.
class GrayRaster {
public:
    GrayRaster() = default;
    GrayRaster(int width, int height);
    GrayRaster(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<const std::uint8_t> data() const noexcept { return data_; }
    std::span<std::uint8_t> data() noexcept { return data_; }

    std::uint8_t at(int x, int y) const noexcept {
        return data_[std::size_t(y) * std::size_t(width_) + std::size_t(x)];
    }

    bool operator==(const GrayRaster&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Binary ground truth: every sample is 0 or 255.
class GroundTruthMask : public GrayRaster {
public:
    GroundTruthMask() = default;
    GroundTruthMask(int width, int height, std::vector<std::uint8_t> data);

    std::size_t foreground_count() const noexcept;
};

/// Continuous prediction; sample v reads as v/255 in [0,1].
class SaliencyMap : public GrayRaster {
public:
    using GrayRaster::GrayRaster;
};

} // namespace wxbench
