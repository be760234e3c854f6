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
#include <optional>
#include <string_view>

namespace wxbench {

enum class WeatherClass : std::uint8_t {
    Clean = 0,
    Fog,
    Rain,
    Snow,
    Dark,
    Overexposure,
    FogRain,
    FogSnow,
    RainSnow,
};

inline constexpr int kWeatherClassCount = 9;
inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 3;

inline constexpr std::array<WeatherClass, kWeatherClassCount> kAllWeatherClasses = {
    WeatherClass::Clean,        WeatherClass::Fog,     WeatherClass::Rain,
    WeatherClass::Snow,         WeatherClass::Dark,    WeatherClass::Overexposure,
    WeatherClass::FogRain,      WeatherClass::FogSnow, WeatherClass::RainSnow,
};

/// Every class except Clean, in index order.
inline constexpr std::array<WeatherClass, kWeatherClassCount - 1> kNoiseClasses = {
    WeatherClass::Fog,          WeatherClass::Rain,    WeatherClass::Snow,
    WeatherClass::Dark,         WeatherClass::Overexposure,
    WeatherClass::FogRain,      WeatherClass::FogSnow, WeatherClass::RainSnow,
};

constexpr int index_of(WeatherClass c) noexcept { return static_cast<int>(c); }

std::string_view tag_of(WeatherClass c) noexcept;
std::optional<WeatherClass> weather_from_tag(std::string_view tag) noexcept;
std::optional<WeatherClass> weather_from_index(int index) noexcept;

constexpr bool is_mixed(WeatherClass c) noexcept {
    return c == WeatherClass::FogRain || c == WeatherClass::FogSnow || c == WeatherClass::RainSnow;
}

/// (class, level, seed) fully determines one degradation. Clean ignores level
/// and seed; make_weather_spec canonicalizes it to level 1, seed 0.
struct WeatherSpec {
    WeatherClass weather = WeatherClass::Clean;
    int level = kMinLevel;
    std::uint64_t seed = 0;

    bool operator==(const WeatherSpec&) const = default;
};

/// Throws InvalidArgument for a level outside [1,3].
WeatherSpec make_weather_spec(WeatherClass weather, int level, std::uint64_t seed);

} // namespace wxbench
