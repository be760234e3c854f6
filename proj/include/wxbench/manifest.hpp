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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wxbench/weather_class.hpp"

namespace wxbench {

enum class Split : std::uint8_t { Train, TestSynth, TestReal };

std::string_view split_name(Split split) noexcept;
std::optional<Split> split_from_name(std::string_view name) noexcept;

struct SampleRecord {
    std::string id;
    Split split = Split::Train;
    std::string image_path;  // relative to the manifest root
    std::string mask_path;
    WeatherSpec weather;
    std::string source_id;   // clean ancestor
    std::string source_dataset;

    bool operator==(const SampleRecord&) const = default;
};

struct DatasetManifest {
    std::string root = ".";
    std::uint64_t global_seed = 0;
    std::vector<SampleRecord> records;

    bool operator==(const DatasetManifest&) const = default;
};

inline constexpr int kManifestFormatVersion = 1;

/// JSON Lines: a header line {root, global_seed, format_version} followed by
/// one record per line with keys id, split, image_path, mask_path,
/// weather{class, level, seed}, source_id, source_dataset in that order.
std::string serialize_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(std::string_view text);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Directory that record paths resolve against: root, taken relative to the
/// manifest file's directory when not absolute.
std::filesystem::path resolve_root(const DatasetManifest& manifest,
                                   const std::filesystem::path& manifest_path);

/// Semantic checks: unique ids, paths that stay under the root, test_synth
/// sources used at most once, train sources used 2 to 6 times. Returns one
/// message per violation.
std::vector<std::string> validate_manifest(const DatasetManifest& manifest);

} // namespace wxbench
