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

#include <cmath>

#include "wxbench/error.hpp"
#include "wxbench/rng.hpp"
#include "wxbench/weather.hpp"

namespace wxbench::synth {

namespace {

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

} // namespace

ValueNoise::ValueNoise(int width, int height, double scale, std::uint64_t seed)
    : width_(width), scale_(scale) {
    if (width <= 0 || height <= 0 || !(scale > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "value noise needs positive size and scale");
    }
    lattice_w_ = int(std::floor(double(width - 1) / scale)) + 2;
    lattice_h_ = int(std::floor(double(height - 1) / scale)) + 2;
    Rng rng(seed);
    lattice_.resize(std::size_t(lattice_w_) * std::size_t(lattice_h_));
    for (auto& v : lattice_) v = rng.uniform();

    cell_x_.resize(std::size_t(width));
    weight_x_.resize(std::size_t(width));
    for (int x = 0; x < width; ++x) {
        const double fx = double(x) / scale_;
        const double cell = std::floor(fx);
        cell_x_[std::size_t(x)] = int(cell);
        weight_x_[std::size_t(x)] = smoothstep(fx - cell);
    }
}

void ValueNoise::sample_row(int y, std::vector<double>& out) const {
    const double fy = double(y) / scale_;
    const double cell = std::floor(fy);
    const double wy = smoothstep(fy - cell);
    const auto row0 = std::size_t(cell) * std::size_t(lattice_w_);
    const auto row1 = row0 + std::size_t(lattice_w_);
    out.resize(std::size_t(width_));
    for (std::size_t x = 0; x < out.size(); ++x) {
        const auto i = std::size_t(cell_x_[x]);
        const double wx = weight_x_[x];
        const double a = lattice_[row0 + i];
        const double b = lattice_[row0 + i + 1];
        const double c = lattice_[row1 + i];
        const double d = lattice_[row1 + i + 1];
        const double top = a + (b - a) * wx;
        const double bottom = c + (d - c) * wx;
        out[x] = top + (bottom - top) * wy;
    }
}

} // namespace wxbench::synth
