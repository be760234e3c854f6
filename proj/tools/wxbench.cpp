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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wxbench/commands.hpp"
#include "wxbench/error.hpp"

namespace fs = std::filesystem;
using namespace wxbench;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) throw Error(ErrorKind::Io, out + ": write failed");
}

int fail(std::string_view kind, const std::string& message, int code) {
    std::cerr << "wxbench: error kind=" << kind << ": " << message << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weather-degraded salient object detection benchmark toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int workers = 0;

    // synth
    cli::SynthOptions synth;
    std::string weather_tag = "clean";
    auto* synth_cmd = app.add_subcommand("synth", "Degrade every PNG in a directory");
    synth_cmd->add_option("--input", synth.images_dir, "Directory of clean PNG images")->required();
    synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
    synth_cmd->add_option("--weather", weather_tag, "Weather class tag");
    synth_cmd->add_option("--level", synth.level, "Intensity level")->check(CLI::Range(1, 3));
    synth_cmd->add_flag("--sweep", synth.sweep, "All 8 noise classes x 3 levels plus clean");
    synth_cmd->add_option("--seed", seed, "Global seed");
    synth_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    // build
    cli::BuildOptions build;
    auto* build_cmd = app.add_subcommand("build", "Build a benchmark from a clean image/mask corpus");
    build_cmd->add_option("--input", build.images_dir, "Directory of clean PNG images")->required();
    build_cmd->add_option("--masks", build.masks_dir, "Directory of PNG masks, same stems")->required();
    build_cmd->add_option("--out", build.out_dir, "Output directory")->required();
    build_cmd->add_option("--seed", seed, "Global seed");
    build_cmd->add_option("--split-ratio", build.split_ratio, "Train fraction")->check(CLI::Range(0.0, 1.0));
    build_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    // eval
    cli::EvalOptions eval;
    std::string split_tag;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate saliency maps against a manifest");
    eval_cmd->add_option("--pred", eval.pred_dir, "Directory of {id}.png predictions")->required();
    eval_cmd->add_option("--input", eval.manifest_path, "manifest.jsonl")->required();
    eval_cmd->add_option("--out", eval.out_dir, "Report directory")->required();
    eval_cmd->add_option("--split", split_tag, "Only evaluate records of this split");
    eval_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    eval_cmd->add_flag("--allow-missing", eval.allow_missing, "Skip ids without a prediction");

    // report
    std::vector<fs::path> report_inputs;
    std::vector<std::string> report_names;
    std::string format_name = "md";
    std::string out_file;
    auto* report_cmd = app.add_subcommand("report", "Render one or more reports as a table");
    report_cmd->add_option("--input", report_inputs, "report.json, once per method")->required();
    report_cmd->add_option("--name", report_names, "Method name, once per --input");
    report_cmd->add_option("--format", format_name, "json, csv or md");
    report_cmd->add_option("--out", out_file, "Output file (default: stdout)");

    // stats
    fs::path stats_manifest;
    auto* stats_cmd = app.add_subcommand("stats", "Object-size/count and weather statistics");
    stats_cmd->add_option("--input", stats_manifest, "manifest.jsonl")->required();
    stats_cmd->add_option("--out", out_file, "Output file (default: stdout)");
    stats_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* params_cmd = app.add_subcommand("params", "Print the synthesis parameter tables");
    params_cmd->add_option("--out", out_file, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        if (*synth_cmd) {
            const auto weather = weather_from_tag(weather_tag);
            if (!weather) throw Error(ErrorKind::InvalidArgument, "unknown weather class '" + weather_tag + "'");
            synth.weather = *weather;
            synth.seed = seed;
            synth.workers = workers;
            const auto n = cli::cmd_synth(synth);
            std::cerr << "wxbench: wrote " << n << " images to " << synth.out_dir.string() << '\n';
        } else if (*build_cmd) {
            build.seed = seed;
            build.workers = workers;
            const auto manifest = cli::cmd_build(build);
            std::cerr << "wxbench: built " << manifest.records.size() << " records in "
                      << build.out_dir.string() << '\n';
        } else if (*eval_cmd) {
            if (!split_tag.empty()) {
                eval.split = split_from_name(split_tag);
                if (!eval.split) throw Error(ErrorKind::InvalidArgument, "unknown split '" + split_tag + "'");
            }
            eval.workers = workers;
            const auto report = cli::cmd_eval(eval);
            for (const auto& id : report.missing) std::cerr << "wxbench: missing prediction id=" << id << '\n';
            std::cerr << "wxbench: evaluated " << report.per_image.size() << " pairs, MAE "
                      << report.aggregate.mae << ", S " << report.aggregate.s << '\n';
        } else if (*report_cmd) {
            const auto format = cli::table_format_from_name(format_name);
            if (!format) throw Error(ErrorKind::InvalidArgument, "unknown format '" + format_name + "'");
            emit(cli::cmd_report(report_inputs, report_names, *format), out_file);
        } else if (*stats_cmd) {
            emit(cli::cmd_stats(stats_manifest, workers), out_file);
        } else if (*params_cmd) {
            emit(cli::weather_params_json(), out_file);
        }
    } catch (const Error& e) {
        return fail(error_kind_name(e.kind()), e.what(), is_io_error(e.kind()) ? kExitIo : kExitValidation);
    } catch (const fs::filesystem_error& e) {
        return fail("Io", e.what(), kExitIo);
    } catch (const std::exception& e) {
        return fail("Internal", e.what(), kExitValidation);
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    std::fprintf(stderr, "wxbench: elapsed %.3f s\n", elapsed.count());
    return 0;
}
