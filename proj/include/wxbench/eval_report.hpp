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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wxbench/classification.hpp"
#include "wxbench/metrics.hpp"

namespace wxbench::metrics {

struct ImageResult {
    std::string id;
    ScalarMetrics scalars;
};

struct EvalReport {
    std::vector<ImageResult> per_image;
    ScalarMetrics aggregate;
    ThresholdSweep curves;  // mean over images; precision, recall and f are persisted
    std::optional<ClassificationEval> classification;
    std::vector<std::string> missing;
};

/// Scalar field names in report and table order.
inline constexpr std::array<std::string_view, 8> kScalarNames = {
    "mae", "s", "f_adp", "f_mean", "f_max", "e_adp", "e_mean", "e_max",
};

double scalar_by_index(const ScalarMetrics& m, std::size_t index);

/// {per_image: [{id, scalars...}], aggregate: {scalars...},
///  curves: {precision[256], recall[256], f[256]},
///  classification: {confusion, accuracy, total} | null, missing: [ids]}
std::string report_to_json(const EvalReport& report);

/// Throws SchemaViolation.
EvalReport report_from_json(std::string_view text);

/// Header row then one row per image.
std::string per_image_csv(const EvalReport& report);

} // namespace wxbench::metrics
