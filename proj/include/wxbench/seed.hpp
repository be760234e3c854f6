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
#include <string_view>

#include "wxbench/weather_class.hpp"

namespace wxbench {

/// 64-bit FNV-1a over the bytes of \p text.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Stable per-sample seed: FNV-1a of "global_seed|sample_id|class_tag|level",
/// with global_seed and level written in decimal.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view sample_id,
                          std::string_view class_tag, int level);

inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view sample_id,
                                 WeatherClass weather, int level) {
    return derive_seed(global_seed, sample_id, tag_of(weather), level);
}

} // namespace wxbench
