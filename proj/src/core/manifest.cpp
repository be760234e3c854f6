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

#include "wxbench/manifest.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wxbench/error.hpp"

namespace wxbench {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 3> kSplitNames = {"train", "test_synth", "test_real"};

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::SchemaViolation, "manifest line " + std::to_string(line) + ": " + what);
}

const ordered_json& field(const ordered_json& obj, const char* key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(line, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_field(const ordered_json& obj, const char* key, std::size_t line) {
    const auto& value = field(obj, key, line);
    if (!value.is_string()) schema_error(line, std::string("field '") + key + "' must be a string");
    return value.get<std::string>();
}

std::uint64_t u64_field(const ordered_json& obj, const char* key, std::size_t line) {
    const auto& value = field(obj, key, line);
    if (!value.is_number_unsigned()) {
        schema_error(line, std::string("field '") + key + "' must be an unsigned integer");
    }
    return value.get<std::uint64_t>();
}

ordered_json record_to_json(const SampleRecord& r) {
    ordered_json weather;
    weather["class"] = tag_of(r.weather.weather);
    weather["level"] = r.weather.level;
    weather["seed"] = r.weather.seed;
    ordered_json j;
    j["id"] = r.id;
    j["split"] = split_name(r.split);
    j["image_path"] = r.image_path;
    j["mask_path"] = r.mask_path;
    j["weather"] = std::move(weather);
    j["source_id"] = r.source_id;
    j["source_dataset"] = r.source_dataset;
    return j;
}

SampleRecord record_from_json(const ordered_json& j, std::size_t line) {
    if (!j.is_object()) schema_error(line, "record must be a JSON object");
    SampleRecord r;
    r.id = string_field(j, "id", line);
    if (r.id.empty()) schema_error(line, "field 'id' must not be empty");
    const auto split = split_from_name(string_field(j, "split", line));
    if (!split) schema_error(line, "unknown split");
    r.split = *split;
    r.image_path = string_field(j, "image_path", line);
    r.mask_path = string_field(j, "mask_path", line);

    const auto& weather = field(j, "weather", line);
    if (!weather.is_object()) schema_error(line, "field 'weather' must be an object");
    const auto weather_class = weather_from_tag(string_field(weather, "class", line));
    if (!weather_class) schema_error(line, "unknown weather class");
    const auto level = u64_field(weather, "level", line);
    if (level < std::uint64_t(kMinLevel) || level > std::uint64_t(kMaxLevel)) {
        schema_error(line, "weather level must be in [1,3]");
    }
    r.weather = WeatherSpec{*weather_class, int(level), u64_field(weather, "seed", line)};

    r.source_id = string_field(j, "source_id", line);
    r.source_dataset = string_field(j, "source_dataset", line);
    return r;
}

bool stays_under_root(const std::string& rel) {
    const std::filesystem::path p(rel);
    if (rel.empty() || p.is_absolute() || p.has_root_name()) return false;
    for (const auto& part : p) {
        if (part == "..") return false;
    }
    return true;
}

} // namespace

std::string_view split_name(Split split) noexcept { return kSplitNames[std::size_t(split)]; }

std::optional<Split> split_from_name(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kSplitNames.size(); ++i) {
        if (kSplitNames[i] == name) return static_cast<Split>(i);
    }
    return std::nullopt;
}

std::string serialize_manifest(const DatasetManifest& manifest) {
    ordered_json header;
    header["root"] = manifest.root;
    header["global_seed"] = manifest.global_seed;
    header["format_version"] = kManifestFormatVersion;
    std::string out = header.dump();
    out += '\n';
    for (const auto& record : manifest.records) {
        out += record_to_json(record).dump();
        out += '\n';
    }
    return out;
}

DatasetManifest parse_manifest(std::string_view text) {
    DatasetManifest manifest;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            schema_error(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!have_header) {
            if (!j.is_object()) schema_error(line_no, "header must be a JSON object");
            if (u64_field(j, "format_version", line_no) != std::uint64_t(kManifestFormatVersion)) {
                schema_error(line_no, "unsupported format_version");
            }
            manifest.root = string_field(j, "root", line_no);
            manifest.global_seed = u64_field(j, "global_seed", line_no);
            have_header = true;
            continue;
        }
        manifest.records.push_back(record_from_json(j, line_no));
    }
    if (!have_header) schema_error(1, "missing header line");
    return manifest;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, path.string() + ": cannot open for writing");
    out << serialize_manifest(manifest);
    if (!out) throw Error(ErrorKind::Io, path.string() + ": write failed");
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) {
            throw Error(ErrorKind::NotFound, path.string() + ": no such file");
        }
        throw Error(ErrorKind::Io, path.string() + ": cannot open for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_manifest(buffer.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

std::filesystem::path resolve_root(const DatasetManifest& manifest,
                                   const std::filesystem::path& manifest_path) {
    const std::filesystem::path root(manifest.root);
    if (root.is_absolute()) return root;
    return (manifest_path.parent_path() / root).lexically_normal();
}

std::vector<std::string> validate_manifest(const DatasetManifest& manifest) {
    std::vector<std::string> problems;
    std::set<std::string> ids;
    std::map<std::string, int> train_uses;
    std::map<std::string, int> test_synth_uses;
    for (const auto& r : manifest.records) {
        if (!ids.insert(r.id).second) problems.push_back("duplicate id '" + r.id + "'");
        if (!stays_under_root(r.image_path)) {
            problems.push_back("record '" + r.id + "': image_path escapes the root");
        }
        if (!stays_under_root(r.mask_path)) {
            problems.push_back("record '" + r.id + "': mask_path escapes the root");
        }
        if (r.split == Split::Train) ++train_uses[r.source_id];
        if (r.split == Split::TestSynth) ++test_synth_uses[r.source_id];
    }
    for (const auto& [source, uses] : train_uses) {
        if (uses < 2 || uses > 6) {
            problems.push_back("train source '" + source + "' has " + std::to_string(uses) +
                               " records, expected 2 to 6");
        }
    }
    for (const auto& [source, uses] : test_synth_uses) {
        if (uses > 1) {
            problems.push_back("test_synth source '" + source + "' appears " +
                               std::to_string(uses) + " times");
        }
    }
    return problems;
}

} // namespace wxbench
