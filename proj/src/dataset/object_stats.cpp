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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "wxbench/dataset.hpp"
#include "wxbench/error.hpp"
#include "wxbench/parallel.hpp"
#include "wxbench/png_io.hpp"

namespace wxbench::dataset {

std::string_view size_class_name(SizeClass c) noexcept {
    switch (c) {
    case SizeClass::Small: return "Small";
    case SizeClass::Middle: return "Middle";
    case SizeClass::Large: return "Large";
    }
    return "?";
}

std::string_view count_class_name(CountClass c) noexcept {
    switch (c) {
    case CountClass::One: return "1";
    case CountClass::Two: return "2";
    case CountClass::ThreeOrMore: return ">=3";
    }
    return "?";
}

SizeClass classify_size(std::size_t foreground, std::size_t total) noexcept {
    // fg/total <= 5/100 and fg/total >= 30/100, cross-multiplied.
    if (foreground * 100 <= total * 5) return SizeClass::Small;
    if (foreground * 100 >= total * 30) return SizeClass::Large;
    return SizeClass::Middle;
}

int count_objects(const GroundTruthMask& mask) {
    const int w = mask.width(), h = mask.height();
    const auto total = mask.size();
    const auto samples = mask.data();
    std::vector<std::uint8_t> seen(total, 0);
    std::vector<std::size_t> stack;
    int objects = 0;
    for (std::size_t start = 0; start < total; ++start) {
        if (samples[start] == 0 || seen[start]) continue;
        std::size_t area = 0;
        seen[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            const auto p = stack.back();
            stack.pop_back();
            ++area;
            const int px = int(p % std::size_t(w)), py = int(p / std::size_t(w));
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = px + dx, ny = py + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const auto q = std::size_t(ny) * std::size_t(w) + std::size_t(nx);
                    if (samples[q] == 0 || seen[q]) continue;
                    seen[q] = 1;
                    stack.push_back(q);
                }
            }
        }
        // area >= 0.05% of the frame
        if (area * 10000 >= total * 5) ++objects;
    }
    return objects;
}

ObjectStats analyze_mask(const GroundTruthMask& mask) {
    ObjectStats stats;
    const auto fg = mask.foreground_count();
    stats.fg_fraction = double(fg) / double(mask.size());
    stats.size_class = classify_size(fg, mask.size());
    stats.objects = count_objects(mask);
    stats.object_count_class = stats.objects <= 1   ? CountClass::One
                               : stats.objects == 2 ? CountClass::Two
                                                    : CountClass::ThreeOrMore;
    return stats;
}

std::vector<SplitStats> compute_stats(const DatasetManifest& manifest,
                                      const std::filesystem::path& root, int workers) {
    std::vector<std::string> paths;
    std::map<std::string, std::size_t> slot_of;
    for (const auto& r : manifest.records) {
        if (slot_of.emplace(r.mask_path, paths.size()).second) paths.push_back(r.mask_path);
    }
    std::vector<ObjectStats> per_mask(paths.size());
    parallel_for(paths.size(), workers, [&](std::size_t i) {
        per_mask[i] = analyze_mask(load_mask(root / paths[i]));
    });

    std::vector<SplitStats> out;
    for (const auto split : {Split::Train, Split::TestSynth, Split::TestReal}) {
        SplitStats entry{split, {}};
        for (const auto& r : manifest.records) {
            if (r.split != split) continue;
            const auto& s = per_mask[slot_of.at(r.mask_path)];
            ++entry.histogram.size[std::size_t(s.size_class)];
            ++entry.histogram.count[std::size_t(s.object_count_class)];
            ++entry.histogram.total;
        }
        if (entry.histogram.total > 0) out.push_back(entry);
    }
    return out;
}

BalanceReport balance_of(Split split, const std::array<std::size_t, 9>& histogram,
                         double max_ratio) {
    BalanceReport report{split, histogram, 1.0, true};
    const auto [lo, hi] = std::minmax_element(histogram.begin(), histogram.end());
    report.ratio = *lo == 0 ? std::numeric_limits<double>::infinity() : double(*hi) / double(*lo);
    report.pass = report.ratio <= max_ratio;
    return report;
}

std::vector<BalanceReport> validate_balance(const DatasetManifest& manifest, double max_ratio) {
    std::vector<BalanceReport> out;
    for (const auto split : {Split::Train, Split::TestSynth, Split::TestReal}) {
        std::array<std::size_t, 9> histogram{};
        std::size_t total = 0;
        for (const auto& r : manifest.records) {
            if (r.split != split) continue;
            ++histogram[std::size_t(index_of(r.weather.weather))];
            ++total;
        }
        if (total > 0) out.push_back(balance_of(split, histogram, max_ratio));
    }
    return out;
}

} // namespace wxbench::dataset
