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

#include "wxbench/seed.hpp"

#include <string>

namespace wxbench {

std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char ch : text) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view sample_id,
                          std::string_view class_tag, int level) {
    std::string key = std::to_string(global_seed);
    key += '|';
    key += sample_id;
    key += '|';
    key += class_tag;
    key += '|';
    key += std::to_string(level);
    return fnv1a64(key);
}

} // namespace wxbench
