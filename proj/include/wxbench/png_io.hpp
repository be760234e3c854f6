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
#include <filesystem>
#include <span>
#include <vector>

#include "wxbench/raster.hpp"

namespace wxbench {

ImageBuffer load_image(const std::filesystem::path& path);
GroundTruthMask load_mask(const std::filesystem::path& path);
SaliencyMap load_saliency(const std::filesystem::path& path);

// Masks and maps stored as RGB are accepted when all three channels agree.
ImageBuffer decode_image(std::span<const std::uint8_t> png);
GroundTruthMask decode_mask(std::span<const std::uint8_t> png);
SaliencyMap decode_saliency(std::span<const std::uint8_t> png);

std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
std::vector<std::uint8_t> encode_png(const GrayRaster& raster);

void save_png(const ImageBuffer& image, const std::filesystem::path& path);
void save_png(const GrayRaster& raster, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace wxbench
