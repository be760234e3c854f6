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

#include "wxbench/raster.hpp"

namespace wxbench::metrics {

inline constexpr int kThresholdCount = 256;
inline constexpr double kBetaSquared = 0.3;
inline constexpr double kEpsilon = 1e-12;

using Curve = std::array<double, kThresholdCount>;

/// Entry k binarizes the prediction at t_k = k/255 as pred >= t_k with zero
/// never counted as salient, i.e. byte >= max(k, 1). Conventions: precision 1
/// when nothing is predicted, recall 0 on an empty GT, F 0 when its
/// denominator vanishes.
struct ThresholdSweep {
    Curve precision{};
    Curve recall{};
    Curve f{};
    Curve e{};
};

struct ScalarMetrics {
    double mae = 0.0;
    double s = 0.0;
    double f_adp = 0.0;
    double f_mean = 0.0;
    double f_max = 0.0;
    double e_adp = 0.0;
    double e_mean = 0.0;
    double e_max = 0.0;

    bool operator==(const ScalarMetrics&) const = default;
};

struct Triple {
    double adaptive = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

struct PairResult {
    ScalarMetrics scalars;
    ThresholdSweep sweep;
};

// Every entry point throws DimMismatch unless pred and gt share dimensions.

double mae(const SaliencyMap& pred, const GroundTruthMask& gt);

/// min(2 * mean(pred), 1).
double adaptive_threshold(const SaliencyMap& pred);

ThresholdSweep pr_sweep(const SaliencyMap& pred, const GroundTruthMask& gt);

Triple f_measures(const SaliencyMap& pred, const GroundTruthMask& gt);
Triple e_measures(const SaliencyMap& pred, const GroundTruthMask& gt);

/// Structure measure: 0.5 * object term + 0.5 * region term.
double s_measure(const SaliencyMap& pred, const GroundTruthMask& gt);

/// All scalars and the sweep from two passes over the pair.
PairResult evaluate_pair(const SaliencyMap& pred, const GroundTruthMask& gt);

/// Per-field unweighted mean. The summation tree depends only on the input
/// length, so the result is bitwise independent of \p workers. Throws
/// EmptyList.
ScalarMetrics aggregate(std::span<const ScalarMetrics> items, int workers = 1);

/// Pointwise mean of sweeps, reduced the same way as aggregate().
ThresholdSweep aggregate_sweeps(std::span<const ThresholdSweep> items, int workers = 1);

} // namespace wxbench::metrics
