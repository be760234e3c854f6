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
#include <cstddef>
#include <span>

#include "wxbench/weather_class.hpp"

namespace wxbench::metrics {

struct ClassificationEval {
    /// confusion[true][predicted]
    std::array<std::array<std::size_t, kWeatherClassCount>, kWeatherClassCount> confusion{};
    std::size_t total = 0;
    double accuracy = 0.0;  // trace / total
};

/// Throws InvalidArgument on length mismatch and EmptyList on empty input.
ClassificationEval classification_eval(std::span<const WeatherClass> predicted,
                                       std::span<const WeatherClass> truth);

} // namespace wxbench::metrics
