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

#include "wxbench/raster.hpp"

#include <algorithm>
#include <string>

#include "wxbench/error.hpp"

namespace wxbench {

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::MalformedPng: return "MalformedPng";
    case ErrorKind::NonBinaryMask: return "NonBinaryMask";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::MissingPrediction: return "MissingPrediction";
    case ErrorKind::MissingMask: return "MissingMask";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

bool is_io_error(ErrorKind kind) noexcept {
    return kind == ErrorKind::NotFound || kind == ErrorKind::Io;
}

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorKind::InvalidArgument,
                    "raster dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels)
    : ImageBuffer(width, height, channels,
                  std::vector<std::uint8_t>(std::size_t(std::max(width, 0)) *
                                            std::size_t(std::max(height, 0)) *
                                            std::size_t(std::max(channels, 0)))) {}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height);
    if (width < 8 || height < 8) {
        throw Error(ErrorKind::InvalidArgument,
                    "images must be at least 8x8, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    if (channels != 1 && channels != 3) {
        throw Error(ErrorKind::InvalidArgument,
                    "images must have 1 or 3 channels, got " + std::to_string(channels));
    }
    if (data_.size() != pixel_count() * std::size_t(channels)) {
        throw Error(ErrorKind::InvalidArgument, "image data length does not match dimensions");
    }
}

GrayRaster::GrayRaster(int width, int height)
    : GrayRaster(width, height,
                 std::vector<std::uint8_t>(std::size_t(std::max(width, 0)) *
                                           std::size_t(std::max(height, 0)))) {}

GrayRaster::GrayRaster(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != std::size_t(width) * std::size_t(height)) {
        throw Error(ErrorKind::InvalidArgument, "raster data length does not match dimensions");
    }
}

GroundTruthMask::GroundTruthMask(int width, int height, std::vector<std::uint8_t> data)
    : GrayRaster(width, height, std::move(data)) {
    const auto samples = this->data();
    const auto bad = std::find_if(samples.begin(), samples.end(),
                                  [](std::uint8_t v) { return v != 0 && v != 255; });
    if (bad != samples.end()) {
        const auto offset = std::size_t(bad - samples.begin());
        throw Error(ErrorKind::NonBinaryMask,
                    "mask sample " + std::to_string(*bad) + " at (" +
                        std::to_string(offset % std::size_t(width)) + "," +
                        std::to_string(offset / std::size_t(width)) + ") is not 0 or 255");
    }
}

std::size_t GroundTruthMask::foreground_count() const noexcept {
    const auto samples = data();
    return std::size_t(std::count(samples.begin(), samples.end(), std::uint8_t{255}));
}

} // namespace wxbench
