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
#include <vector>

#include "wxbench/eval_report.hpp"
#include "wxbench/manifest.hpp"
#include "wxbench/weather_class.hpp"

namespace wxbench::cli {

namespace fs = std::filesystem;

struct SynthOptions {
    fs::path images_dir;
    fs::path out_dir;
    WeatherClass weather = WeatherClass::Clean;
    int level = 1;
    bool sweep = false;  // every noise class at every level, plus clean
    std::uint64_t seed = 0;
    int workers = 0;     // 0: WXBENCH_THREADS, then hardware concurrency
};

/// Writes {id}__{class}__L{level}.png per output plus labels.jsonl. Clean
/// outputs are byte copies of their inputs. Returns the number of images.
std::size_t cmd_synth(const SynthOptions& options);

struct BuildOptions {
    fs::path images_dir;
    fs::path masks_dir;
    fs::path out_dir;
    std::uint64_t seed = 0;
    double split_ratio = 0.7;
    int workers = 0;
};

/// Splits, expands and degrades the corpus; writes images/, masks/ and
/// manifest.jsonl under out_dir. Throws MissingMask when an image has no
/// mask with the same stem.
DatasetManifest cmd_build(const BuildOptions& options);

struct EvalOptions {
    fs::path pred_dir;
    fs::path manifest_path;
    fs::path out_dir;  // receives report.json and per_image.csv
    std::optional<Split> split;
    int workers = 0;
    bool allow_missing = false;
};

/// Pairs {pred_dir}/{id}.png with each manifest record's mask. Weather
/// predictions are read from {pred_dir}/labels.jsonl when present.
metrics::EvalReport cmd_eval(const EvalOptions& options);

enum class TableFormat { Json, Csv, Markdown };

std::optional<TableFormat> table_format_from_name(std::string_view name) noexcept;

struct MethodRow {
    std::string name;
    metrics::ScalarMetrics scalars;
};

/// Rank mark per (row, column): 1..3 for the best three entries of a column
/// (lowest MAE, highest everything else; ties keep row order), 0 otherwise.
/// A single row receives no marks.
std::vector<std::array<int, 8>> rank_marks(const std::vector<MethodRow>& rows);

std::string render_table(const std::vector<MethodRow>& rows, TableFormat format);

/// Loads each report's aggregate; names default to the file stems.
std::string cmd_report(const std::vector<fs::path>& reports, const std::vector<std::string>& names,
                       TableFormat format);

/// Object-size/count histograms, weather histograms and balance verdicts as
/// JSON.
std::string cmd_stats(const fs::path& manifest_path, int workers = 0);

/// Frozen synthesis parameter tables as JSON.
std::string weather_params_json();

} // namespace wxbench::cli
