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

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wxbench/manifest.hpp"
#include "wxbench/raster.hpp"

namespace wxbench::dataset {

struct SplitPolicy {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
};

struct SplitResult {
    std::vector<std::string> train;
    std::vector<std::string> test;
};

/// Sorts the ids, applies a seeded Fisher-Yates shuffle and takes the first
/// floor(train_fraction * N) as train. Throws EmptyCorpus or, on repeated
/// ids, InvalidArgument.
SplitResult split_base(std::span<const std::string> corpus_ids, const SplitPolicy& policy);

struct ExpansionPolicy {
    int variants_min = 2;
    int variants_max = 5;
    double retain_clean_prob = 0.5;
};

/// Output layout used by every expanded record.
std::string record_id(std::string_view source_id, const WeatherSpec& weather);
std::string image_rel_path(std::string_view record_id);
std::string mask_rel_path(std::string_view source_id);

/// Per source: K in [variants_min, variants_max] records with distinct noise
/// classes and uniform levels, plus the clean image with retain_clean_prob.
std::vector<SampleRecord> expand_train(std::span<const std::string> train_ids,
                                       const ExpansionPolicy& policy, std::uint64_t global_seed,
                                       std::string_view source_dataset = {});

/// Exactly one record per source; each class is uniform over all 9 and the
/// split-wide class counts differ by at most one.
std::vector<SampleRecord> expand_test(std::span<const std::string> test_ids,
                                      std::uint64_t global_seed,
                                      std::string_view source_dataset = {});

/// split_base + expand_train + expand_test, in source order.
DatasetManifest build_manifest(std::span<const std::string> corpus_ids, const SplitPolicy& split,
                               const ExpansionPolicy& expansion, std::uint64_t global_seed,
                               std::string_view source_dataset = {});

enum class SizeClass : std::uint8_t { Small, Middle, Large };
enum class CountClass : std::uint8_t { One, Two, ThreeOrMore };

std::string_view size_class_name(SizeClass c) noexcept;
std::string_view count_class_name(CountClass c) noexcept;

struct ObjectStats {
    SizeClass size_class = SizeClass::Small;
    CountClass object_count_class = CountClass::One;
    double fg_fraction = 0.0;
    int objects = 0;  // components at or above the area floor
};

/// Small iff fg <= 5% of the frame, Large iff fg >= 30%; compared exactly.
SizeClass classify_size(std::size_t foreground, std::size_t total) noexcept;

/// Number of 8-connected foreground components covering at least 0.05% of
/// the frame.
int count_objects(const GroundTruthMask& mask);

/// A mask whose components all fall below the floor still buckets as One.
ObjectStats analyze_mask(const GroundTruthMask& mask);

struct StatsHistogram {
    std::array<std::size_t, 3> size{};   // indexed by SizeClass
    std::array<std::size_t, 3> count{};  // indexed by CountClass
    std::size_t total = 0;
};

struct SplitStats {
    Split split;
    StatsHistogram histogram;
};

/// One histogram per split present in the manifest, counted per record.
/// Masks shared between records are loaded once.
std::vector<SplitStats> compute_stats(const DatasetManifest& manifest,
                                      const std::filesystem::path& root, int workers = 1);

struct BalanceReport {
    Split split;
    std::array<std::size_t, 9> histogram{};  // indexed by WeatherClass
    double ratio = 1.0;                      // max/min, +inf when a class is empty
    bool pass = true;
};

inline constexpr double kMaxBalanceRatio = 1.5;

BalanceReport balance_of(Split split, const std::array<std::size_t, 9>& histogram,
                         double max_ratio = kMaxBalanceRatio);

std::vector<BalanceReport> validate_balance(const DatasetManifest& manifest,
                                            double max_ratio = kMaxBalanceRatio);

} // namespace wxbench::dataset
