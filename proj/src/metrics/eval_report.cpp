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

#include "wxbench/eval_report.hpp"

#include <cstdio>

#include <json.hpp>

#include "wxbench/error.hpp"

namespace wxbench::metrics {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorKind::SchemaViolation, "report: " + what);
}

constexpr std::array<double ScalarMetrics::*, 8> kMembers = {
    &ScalarMetrics::mae,   &ScalarMetrics::s,     &ScalarMetrics::f_adp,  &ScalarMetrics::f_mean,
    &ScalarMetrics::f_max, &ScalarMetrics::e_adp, &ScalarMetrics::e_mean, &ScalarMetrics::e_max,
};

ordered_json scalars_to_json(const ScalarMetrics& m) {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < kScalarNames.size(); ++i) {
        j[std::string(kScalarNames[i])] = scalar_by_index(m, i);
    }
    return j;
}

ScalarMetrics scalars_from_json(const ordered_json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where + " must be an object");
    ScalarMetrics m;
    for (std::size_t i = 0; i < kScalarNames.size(); ++i) {
        const auto it = j.find(std::string(kScalarNames[i]));
        if (it == j.end() || !it->is_number()) {
            schema_error(where + " lacks numeric field '" + std::string(kScalarNames[i]) + "'");
        }
        m.*kMembers[i] = it->get<double>();
    }
    return m;
}

void curve_from_json(const ordered_json& curves, const char* name, Curve& out) {
    const auto it = curves.find(name);
    if (it == curves.end() || !it->is_array() || it->size() != out.size()) {
        schema_error(std::string("curves.") + name + " must be an array of 256 numbers");
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!(*it)[k].is_number()) schema_error(std::string("curves.") + name + " must be numeric");
        out[k] = (*it)[k].get<double>();
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

double scalar_by_index(const ScalarMetrics& m, std::size_t index) {
    return m.*kMembers.at(index);
}

std::string report_to_json(const EvalReport& report) {
    ordered_json j;
    auto per_image = ordered_json::array();
    for (const auto& item : report.per_image) {
        ordered_json row;
        row["id"] = item.id;
        const auto scalars = scalars_to_json(item.scalars);
        for (const auto& [key, value] : scalars.items()) row[key] = value;
        per_image.push_back(std::move(row));
    }
    j["per_image"] = std::move(per_image);
    j["aggregate"] = scalars_to_json(report.aggregate);
    ordered_json curves;
    curves["precision"] = report.curves.precision;
    curves["recall"] = report.curves.recall;
    curves["f"] = report.curves.f;
    j["curves"] = std::move(curves);
    if (report.classification) {
        ordered_json cls;
        cls["confusion"] = report.classification->confusion;
        cls["accuracy"] = report.classification->accuracy;
        cls["total"] = report.classification->total;
        j["classification"] = std::move(cls);
    } else {
        j["classification"] = nullptr;
    }
    j["missing"] = report.missing;
    return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        schema_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) schema_error("top level must be an object");

    EvalReport report;
    const auto per_image = j.find("per_image");
    if (per_image == j.end() || !per_image->is_array()) schema_error("per_image must be an array");
    for (const auto& row : *per_image) {
        if (!row.is_object() || !row.contains("id") || !row["id"].is_string()) {
            schema_error("per_image entries need a string id");
        }
        const auto id = row["id"].get<std::string>();
        report.per_image.push_back({id, scalars_from_json(row, "per_image[" + id + "]")});
    }

    const auto aggregate = j.find("aggregate");
    if (aggregate == j.end()) schema_error("missing aggregate");
    report.aggregate = scalars_from_json(*aggregate, "aggregate");

    const auto curves = j.find("curves");
    if (curves == j.end() || !curves->is_object()) schema_error("curves must be an object");
    curve_from_json(*curves, "precision", report.curves.precision);
    curve_from_json(*curves, "recall", report.curves.recall);
    curve_from_json(*curves, "f", report.curves.f);

    const auto cls = j.find("classification");
    if (cls != j.end() && !cls->is_null()) {
        ClassificationEval eval;
        try {
            eval.confusion = (*cls).at("confusion").get<decltype(eval.confusion)>();
            eval.accuracy = (*cls).at("accuracy").get<double>();
            eval.total = (*cls).at("total").get<std::size_t>();
        } catch (const nlohmann::json::exception& e) {
            schema_error(std::string("classification: ") + e.what());
        }
        report.classification = eval;
    }

    const auto missing = j.find("missing");
    if (missing != j.end()) {
        if (!missing->is_array()) schema_error("missing must be an array");
        for (const auto& id : *missing) {
            if (!id.is_string()) schema_error("missing entries must be strings");
            report.missing.push_back(id.get<std::string>());
        }
    }
    return report;
}

std::string per_image_csv(const EvalReport& report) {
    std::string out = "id";
    for (const auto name : kScalarNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& item : report.per_image) {
        out += item.id;
        for (std::size_t i = 0; i < kScalarNames.size(); ++i) {
            out += ',';
            out += format_number(scalar_by_index(item.scalars, i));
        }
        out += '\n';
    }
    return out;
}

} // namespace wxbench::metrics
