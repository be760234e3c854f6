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

#include "wxbench/weather_class.hpp"

#include <string>

#include "wxbench/error.hpp"

namespace wxbench {

namespace {

constexpr std::array<std::string_view, kWeatherClassCount> kTags = {
    "clean", "fog", "rain", "snow", "dark", "overexposure", "fog_rain", "fog_snow", "rain_snow",
};

} // namespace

std::string_view tag_of(WeatherClass c) noexcept { return kTags[std::size_t(index_of(c))]; }

std::optional<WeatherClass> weather_from_tag(std::string_view tag) noexcept {
    for (std::size_t i = 0; i < kTags.size(); ++i) {
        if (kTags[i] == tag) return static_cast<WeatherClass>(i);
    }
    return std::nullopt;
}

std::optional<WeatherClass> weather_from_index(int index) noexcept {
    if (index < 0 || index >= kWeatherClassCount) return std::nullopt;
    return static_cast<WeatherClass>(index);
}

WeatherSpec make_weather_spec(WeatherClass weather, int level, std::uint64_t seed) {
    if (weather == WeatherClass::Clean) return WeatherSpec{WeatherClass::Clean, kMinLevel, 0};
    if (level < kMinLevel || level > kMaxLevel) {
        throw Error(ErrorKind::InvalidArgument,
                    "weather level must be in [1,3], got " + std::to_string(level));
    }
    return WeatherSpec{weather, level, seed};
}

} // namespace wxbench
