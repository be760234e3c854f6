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

#include "wxbench/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wxbench/dataset.hpp"
#include "wxbench/error.hpp"
#include "wxbench/parallel.hpp"
#include "wxbench/png_io.hpp"
#include "wxbench/seed.hpp"
#include "wxbench/weather.hpp"

namespace wxbench::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

/// PNG stems in a directory, sorted. Throws NotFound for a missing directory.
std::vector<std::string> list_png_stems(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::NotFound, dir.string() + ": not a directory");
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            stems.push_back(entry.path().stem().string());
        }
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorKind::Io, dir.string() + ": cannot create directory");
    }
}

struct PendingFile {
    fs::path path;
    std::vector<std::uint8_t> bytes;
};

/// Runs produce(i) for every task on the worker pool in bounded batches and
/// writes the resulting files from this thread in task order.
template <typename Produce>
void produce_and_write(std::size_t tasks, int workers, Produce produce) {
    const auto batch = std::size_t(std::max(workers, 1)) * 4;
    for (std::size_t begin = 0; begin < tasks; begin += batch) {
        const auto n = std::min(batch, tasks - begin);
        std::vector<std::vector<PendingFile>> slots(n);
        parallel_for(n, workers, [&](std::size_t i) { slots[i] = produce(begin + i); });
        for (const auto& files : slots) {
            for (const auto& f : files) write_file(f.path, f.bytes);
        }
    }
}

ordered_json weather_json(const WeatherSpec& spec) {
    ordered_json j;
    j["class"] = tag_of(spec.weather);
    j["level"] = spec.level;
    j["seed"] = spec.seed;
    return j;
}

std::vector<std::uint8_t> degraded_png(const ImageBuffer& image,
                                       const std::vector<std::uint8_t>& source_bytes,
                                       const WeatherSpec& spec) {
    if (spec.weather == WeatherClass::Clean) return source_bytes;
    return encode_png(synth::degrade(image, spec));
}

} // namespace

std::size_t cmd_synth(const SynthOptions& options) {
    const auto stems = list_png_stems(options.images_dir);
    ensure_directory(options.out_dir);
    const int workers = resolve_worker_count(options.workers);

    std::vector<std::pair<WeatherClass, int>> variants;
    if (options.sweep) {
        variants.emplace_back(WeatherClass::Clean, kMinLevel);
        for (const auto c : kNoiseClasses) {
            for (int level = kMinLevel; level <= kMaxLevel; ++level) variants.emplace_back(c, level);
        }
    } else {
        variants.emplace_back(options.weather, options.level);
    }

    std::string labels;
    std::vector<std::vector<WeatherSpec>> specs(stems.size());
    for (std::size_t i = 0; i < stems.size(); ++i) {
        for (const auto& [weather, level] : variants) {
            const auto spec = make_weather_spec(
                weather, level,
                weather == WeatherClass::Clean ? 0 : derive_seed(options.seed, stems[i], weather, level));
            const auto id = dataset::record_id(stems[i], spec);
            ordered_json line;
            line["id"] = id;
            line["source_id"] = stems[i];
            line["weather"] = weather_json(spec);
            labels += line.dump();
            labels += '\n';
            specs[i].push_back(spec);
        }
    }

    produce_and_write(stems.size(), workers, [&](std::size_t i) {
        const auto source = options.images_dir / (stems[i] + ".png");
        const auto bytes = read_file(source);
        const auto image = [&] {
            try {
                return decode_image(bytes);
            } catch (const Error& e) {
                throw Error(e.kind(), source.string() + ": " + e.what());
            }
        }();
        std::vector<PendingFile> files;
        for (const auto& spec : specs[i]) {
            files.push_back({options.out_dir / (dataset::record_id(stems[i], spec) + ".png"),
                             degraded_png(image, bytes, spec)});
        }
        return files;
    });

    std::ofstream out(options.out_dir / "labels.jsonl", std::ios::binary | std::ios::trunc);
    out << labels;
    if (!out) throw Error(ErrorKind::Io, (options.out_dir / "labels.jsonl").string() + ": write failed");
    return stems.size() * variants.size();
}

DatasetManifest cmd_build(const BuildOptions& options) {
    const auto stems = list_png_stems(options.images_dir);
    if (stems.empty()) {
        throw Error(ErrorKind::EmptyCorpus, options.images_dir.string() + ": no PNG images found");
    }
    for (const auto& id : stems) {
        std::error_code ec;
        if (!fs::is_regular_file(options.masks_dir / (id + ".png"), ec)) {
            throw Error(ErrorKind::MissingMask, "no mask for image id '" + id + "' in " +
                                                    options.masks_dir.string());
        }
    }
    const int workers = resolve_worker_count(options.workers);
    const auto dataset_name = fs::absolute(options.images_dir).lexically_normal().filename().string();

    auto manifest = dataset::build_manifest(stems, {options.split_ratio, options.seed}, {},
                                            options.seed, dataset_name);
    const auto problems = validate_manifest(manifest);
    if (!problems.empty()) throw Error(ErrorKind::SchemaViolation, "built manifest: " + problems.front());

    ensure_directory(options.out_dir / "images");
    ensure_directory(options.out_dir / "masks");

    // Records of one source are contiguous; group them into one task.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < manifest.records.size(); ++i) {
        if (groups.empty() || manifest.records[i].source_id != manifest.records[groups.back().first].source_id) {
            groups.emplace_back(i, i);
        }
        groups.back().second = i + 1;
    }

    produce_and_write(groups.size(), workers, [&](std::size_t g) {
        const auto [begin, end] = groups[g];
        const auto& source_id = manifest.records[begin].source_id;
        const auto image_path = options.images_dir / (source_id + ".png");
        const auto mask_path = options.masks_dir / (source_id + ".png");
        const auto image_bytes = read_file(image_path);
        const auto mask_bytes = read_file(mask_path);
        ImageBuffer image;
        GroundTruthMask mask;
        try {
            image = decode_image(image_bytes);
        } catch (const Error& e) {
            throw Error(e.kind(), image_path.string() + ": " + e.what());
        }
        try {
            mask = decode_mask(mask_bytes);
        } catch (const Error& e) {
            throw Error(e.kind(), mask_path.string() + ": " + e.what());
        }
        if (mask.width() != image.width() || mask.height() != image.height()) {
            throw Error(ErrorKind::DimMismatch, "mask and image sizes differ for id '" + source_id + "'");
        }
        std::vector<PendingFile> files;
        files.push_back({options.out_dir / manifest.records[begin].mask_path, mask_bytes});
        for (std::size_t i = begin; i < end; ++i) {
            const auto& r = manifest.records[i];
            files.push_back({options.out_dir / r.image_path, degraded_png(image, image_bytes, r.weather)});
        }
        return files;
    });

    write_manifest(manifest, options.out_dir / "manifest.jsonl");
    return manifest;
}

namespace {

/// {id -> class} from a labels.jsonl whose "class" is an index or a tag.
std::map<std::string, WeatherClass> read_weather_labels(const fs::path& path) {
    std::map<std::string, WeatherClass> labels;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, path.string() + ": cannot open for reading");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto where = path.string() + " line " + std::to_string(line_no);
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            throw Error(ErrorKind::SchemaViolation, where + ": invalid JSON");
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("class")) {
            throw Error(ErrorKind::SchemaViolation, where + ": expected {id, class}");
        }
        std::optional<WeatherClass> weather;
        const auto& cls = j["class"];
        if (cls.is_number_integer()) weather = weather_from_index(cls.get<int>());
        if (cls.is_string()) weather = weather_from_tag(cls.get<std::string>());
        if (!weather) throw Error(ErrorKind::SchemaViolation, where + ": unknown weather class");
        labels[j["id"].get<std::string>()] = *weather;
    }
    return labels;
}

} // namespace

metrics::EvalReport cmd_eval(const EvalOptions& options) {
    const auto manifest = read_manifest(options.manifest_path);
    const auto root = resolve_root(manifest, options.manifest_path);
    const int workers = resolve_worker_count(options.workers);

    std::vector<const SampleRecord*> records;
    metrics::EvalReport report;
    for (const auto& r : manifest.records) {
        if (options.split && r.split != *options.split) continue;
        std::error_code ec;
        if (fs::is_regular_file(options.pred_dir / (r.id + ".png"), ec)) {
            records.push_back(&r);
        } else {
            report.missing.push_back(r.id);
        }
    }
    if (!report.missing.empty() && !options.allow_missing) {
        std::string listed;
        for (std::size_t i = 0; i < report.missing.size() && i < 10; ++i) {
            listed += (i ? ", " : "") + report.missing[i];
        }
        if (report.missing.size() > 10) listed += ", ...";
        throw Error(ErrorKind::MissingPrediction,
                    std::to_string(report.missing.size()) + " prediction(s) missing: " + listed);
    }
    if (records.empty()) throw Error(ErrorKind::EmptyList, "no prediction/ground-truth pairs to evaluate");

    std::vector<metrics::ScalarMetrics> scalars(records.size());
    std::vector<metrics::ThresholdSweep> sweeps(records.size());
    parallel_for(records.size(), workers, [&](std::size_t i) {
        const auto& r = *records[i];
        try {
            const auto pred = load_saliency(options.pred_dir / (r.id + ".png"));
            const auto gt = load_mask(root / r.mask_path);
            auto result = metrics::evaluate_pair(pred, gt);
            scalars[i] = result.scalars;
            sweeps[i] = result.sweep;
        } catch (const Error& e) {
            throw Error(e.kind(), "id '" + r.id + "': " + e.what());
        }
    });

    for (std::size_t i = 0; i < records.size(); ++i) {
        report.per_image.push_back({records[i]->id, scalars[i]});
    }
    report.aggregate = metrics::aggregate(scalars, workers);
    report.curves = metrics::aggregate_sweeps(sweeps, workers);

    const auto labels_path = options.pred_dir / "labels.jsonl";
    if (fs::exists(labels_path)) {
        const auto labels = read_weather_labels(labels_path);
        std::vector<WeatherClass> predicted, truth;
        for (const auto* r : records) {
            const auto it = labels.find(r->id);
            if (it == labels.end()) continue;
            predicted.push_back(it->second);
            truth.push_back(r->weather.weather);
        }
        if (!truth.empty()) report.classification = metrics::classification_eval(predicted, truth);
    }

    ensure_directory(options.out_dir);
    const auto json = metrics::report_to_json(report);
    const auto csv = metrics::per_image_csv(report);
    write_file(options.out_dir / "report.json", std::span(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
    write_file(options.out_dir / "per_image.csv", std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
    return report;
}

std::string cmd_report(const std::vector<fs::path>& reports, const std::vector<std::string>& names,
                       TableFormat format) {
    if (reports.empty()) throw Error(ErrorKind::EmptyList, "no reports given");
    if (!names.empty() && names.size() != reports.size()) {
        throw Error(ErrorKind::InvalidArgument, "--name must be given once per report");
    }
    std::vector<MethodRow> rows;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto bytes = read_file(reports[i]);
        try {
            const auto report = metrics::report_from_json(
                std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
            rows.push_back({names.empty() ? reports[i].stem().string() : names[i], report.aggregate});
        } catch (const Error& e) {
            throw Error(e.kind(), reports[i].string() + ": " + e.what());
        }
    }
    return render_table(rows, format);
}

std::string cmd_stats(const fs::path& manifest_path, int workers) {
    const auto manifest = read_manifest(manifest_path);
    const auto root = resolve_root(manifest, manifest_path);
    const auto stats = dataset::compute_stats(manifest, root, resolve_worker_count(workers));
    const auto balance = dataset::validate_balance(manifest);

    ordered_json j;
    ordered_json objects = ordered_json::object();
    for (const auto& s : stats) {
        ordered_json size, count;
        for (const auto c : {dataset::SizeClass::Small, dataset::SizeClass::Middle, dataset::SizeClass::Large}) {
            size[std::string(dataset::size_class_name(c))] = s.histogram.size[std::size_t(c)];
        }
        for (const auto c : {dataset::CountClass::One, dataset::CountClass::Two, dataset::CountClass::ThreeOrMore}) {
            count[std::string(dataset::count_class_name(c))] = s.histogram.count[std::size_t(c)];
        }
        ordered_json entry;
        entry["size"] = std::move(size);
        entry["count"] = std::move(count);
        entry["total"] = s.histogram.total;
        objects[std::string(split_name(s.split))] = std::move(entry);
    }
    j["object_stats"] = std::move(objects);

    ordered_json weather = ordered_json::object();
    ordered_json verdicts = ordered_json::object();
    for (const auto& b : balance) {
        ordered_json hist;
        for (const auto c : kAllWeatherClasses) hist[std::string(tag_of(c))] = b.histogram[std::size_t(index_of(c))];
        weather[std::string(split_name(b.split))] = std::move(hist);
        ordered_json verdict;
        // JSON has no infinity; an empty class reports a null ratio.
        verdict["ratio"] = std::isfinite(b.ratio) ? ordered_json(b.ratio) : ordered_json(nullptr);
        verdict["pass"] = b.pass;
        verdicts[std::string(split_name(b.split))] = std::move(verdict);
    }
    j["weather_histogram"] = std::move(weather);
    j["balance"] = std::move(verdicts);
    return j.dump(2) + "\n";
}

std::string weather_params_json() {
    ordered_json j;
    for (int level = kMinLevel; level <= kMaxLevel; ++level) {
        const auto fog = synth::fog_params(level);
        const auto rain = synth::rain_params(level);
        const auto snow = synth::snow_params(level);
        const auto exposure = synth::exposure_params(level);
        ordered_json entry;
        entry["fog"] = {{"density", fog.density}, {"airlight", fog.airlight}, {"noise_scale", fog.noise_scale}};
        entry["rain"] = {{"streaks_per_megapixel", rain.streaks_per_megapixel},
                         {"streak_length", rain.streak_length},
                         {"angle_deg", {rain.angle_min_deg, rain.angle_max_deg}},
                         {"alpha", rain.alpha},
                         {"color", synth::kRainColor}};
        entry["snow"] = {{"flakes_per_megapixel", snow.flakes_per_megapixel},
                         {"radius", {snow.radius_min, snow.radius_max}},
                         {"brightness", {snow.brightness_min, snow.brightness_max}},
                         {"alpha", snow.alpha}};
        entry["dark"] = {{"gamma", exposure.dark_gamma}};
        entry["overexposure"] = {{"gain", exposure.over_gain}};
        j["L" + std::to_string(level)] = std::move(entry);
    }
    return j.dump(2) + "\n";
}

} // namespace wxbench::cli
