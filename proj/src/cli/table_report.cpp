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
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "wxbench/commands.hpp"

namespace wxbench::cli {

namespace {

constexpr std::array<const char*, 8> kHeaders = {
    "MAE↓", "S↑", "F_adp↑", "F_mean↑", "F_max↑", "E_adp↑", "E_mean↑", "E_max↑",
};

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::optional<TableFormat> table_format_from_name(std::string_view name) noexcept {
    if (name == "json") return TableFormat::Json;
    if (name == "csv") return TableFormat::Csv;
    if (name == "md" || name == "markdown") return TableFormat::Markdown;
    return std::nullopt;
}

std::vector<std::array<int, 8>> rank_marks(const std::vector<MethodRow>& rows) {
    std::vector<std::array<int, 8>> marks(rows.size(), std::array<int, 8>{});
    if (rows.size() < 2) return marks;
    for (std::size_t col = 0; col < marks.front().size(); ++col) {
        const bool lower_is_better = col == 0;
        std::vector<std::size_t> order(rows.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = metrics::scalar_by_index(rows[a].scalars, col);
            const double vb = metrics::scalar_by_index(rows[b].scalars, col);
            return lower_is_better ? va < vb : va > vb;
        });
        for (std::size_t r = 0; r < std::min<std::size_t>(3, order.size()); ++r) {
            marks[order[r]][col] = int(r) + 1;
        }
    }
    return marks;
}

std::string render_table(const std::vector<MethodRow>& rows, TableFormat format) {
    std::string out;
    switch (format) {
    case TableFormat::Json: {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json entry;
            entry["method"] = row.name;
            for (std::size_t i = 0; i < metrics::kScalarNames.size(); ++i) {
                entry[std::string(metrics::kScalarNames[i])] = metrics::scalar_by_index(row.scalars, i);
            }
            j.push_back(std::move(entry));
        }
        return j.dump(2) + "\n";
    }
    case TableFormat::Csv: {
        out = "method";
        for (const auto name : metrics::kScalarNames) {
            out += ',';
            out += name;
        }
        out += '\n';
        for (const auto& row : rows) {
            out += row.name;
            for (std::size_t i = 0; i < metrics::kScalarNames.size(); ++i) {
                out += ',' + fixed4(metrics::scalar_by_index(row.scalars, i));
            }
            out += '\n';
        }
        return out;
    }
    case TableFormat::Markdown: {
        const auto marks = rank_marks(rows);
        out = "| Method |";
        for (const auto* h : kHeaders) out += std::string(" ") + h + " |";
        out += "\n|---|";
        for (std::size_t i = 0; i < kHeaders.size(); ++i) out += "---:|";
        out += '\n';
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out += "| " + rows[r].name + " |";
            for (std::size_t i = 0; i < kHeaders.size(); ++i) {
                out += ' ' + fixed4(metrics::scalar_by_index(rows[r].scalars, i));
                if (marks[r][i] > 0) out += " (" + std::to_string(marks[r][i]) + ")";
                out += " |";
            }
            out += '\n';
        }
        return out;
    }
    }
    return out;
}

} // namespace wxbench::cli
