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

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "wxbench/error.hpp"
#include "wxbench/manifest.hpp"
#include "wxbench/png_io.hpp"
#include "wxbench/seed.hpp"

using namespace wxbench;
using wxbench::testing::TempDir;

namespace {

// Byte-at-a-time FNV-1a with the published 64-bit parameters.
std::uint64_t reference_fnv1a(const std::string& s) {
    unsigned __int128 h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h = (h * 1099511628211ULL) & 0xFFFFFFFFFFFFFFFFULL;
    }
    return std::uint64_t(h);
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

DatasetManifest random_manifest(std::mt19937_64& rng) {
    DatasetManifest m;
    m.root = rng() % 2 ? "." : "data/wx bench";
    m.global_seed = rng();
    const auto n = rng() % 12;
    for (std::uint64_t i = 0; i < n; ++i) {
        SampleRecord r;
        r.id = "rec_" + std::to_string(i) + (rng() % 2 ? "_é" : "\"q\"");
        r.split = static_cast<Split>(rng() % 3);
        r.image_path = "images/" + r.id + ".png";
        r.mask_path = "masks/" + std::to_string(rng() % 5) + ".png";
        r.weather = WeatherSpec{static_cast<WeatherClass>(rng() % 9), int(rng() % 3) + 1, rng()};
        r.source_id = "src" + std::to_string(rng() % 5);
        r.source_dataset = rng() % 2 ? "DUTS" : "";
        m.records.push_back(r);
    }
    return m;
}

} // namespace

TEST_CASE("raster invariants") {
    CHECK_THROWS_AS(ImageBuffer(7, 8, 3), Error);
    CHECK_THROWS_AS(ImageBuffer(8, 8, 2), Error);
    CHECK_THROWS_AS(ImageBuffer(8, 8, 3, std::vector<std::uint8_t>(10)), Error);
    CHECK(ImageBuffer(8, 8, 1).data().size() == 64);
    CHECK(kind_of([] { GroundTruthMask(2, 2, {0, 255, 7, 0}); }) == ErrorKind::NonBinaryMask);
}

TEST_CASE("load_png") {
    TempDir dir("png");

    SUBCASE("all-zero 4x4 mask") {
        save_png(GrayRaster(4, 4), dir / "m.png");
        const auto mask = load_mask(dir / "m.png");
        CHECK(mask.width() == 4);
        CHECK(mask.height() == 4);
        CHECK(mask.size() == 16);
        CHECK(mask.foreground_count() == 0);
    }
    SUBCASE("sample value 7 is rejected as ground truth") {
        std::vector<std::uint8_t> data(16, 0);
        data[5] = 7;
        save_png(GrayRaster(4, 4, data), dir / "bad.png");
        CHECK(kind_of([&] { load_mask(dir / "bad.png"); }) == ErrorKind::NonBinaryMask);
        CHECK(load_saliency(dir / "bad.png").data()[5] == 7);
    }
    SUBCASE("missing and malformed files") {
        CHECK(kind_of([&] { load_mask(dir / "nope.png"); }) == ErrorKind::NotFound);
        const std::string junk = "not a png at all";
        write_file(dir / "junk.png", std::span(reinterpret_cast<const std::uint8_t*>(junk.data()), junk.size()));
        CHECK(kind_of([&] { load_image(dir / "junk.png"); }) == ErrorKind::MalformedPng);
    }
    SUBCASE("rgb with equal channels loads as a map, otherwise rejected") {
        auto image = testing::scene_image(8, 8);
        save_png(image, dir / "rgb.png");
        CHECK(kind_of([&] { load_saliency(dir / "rgb.png"); }) == ErrorKind::MalformedPng);
        std::vector<std::uint8_t> gray_rgb(8 * 8 * 3);
        for (std::size_t i = 0; i < gray_rgb.size(); ++i) gray_rgb[i] = std::uint8_t((i / 3) * 4);
        save_png(ImageBuffer(8, 8, 3, gray_rgb), dir / "grayrgb.png");
        const auto map = load_saliency(dir / "grayrgb.png");
        CHECK(map.data()[10] == 40);
    }
    SUBCASE("round trip is lossless for random rasters") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 25; ++trial) {
            const int w = 1 + int(rng() % 40), h = 1 + int(rng() % 40);
            const auto map = testing::random_map(w, h, rng);
            CHECK(decode_saliency(encode_png(map)) == map);
            const auto mask = testing::random_mask(w, h, rng, 0.3);
            CHECK(decode_mask(encode_png(mask)) == mask);
            const auto image = testing::scene_image(8 + w, 8 + h, rng());
            CHECK(decode_image(encode_png(image)) == image);
            // save(load(x)) reproduces the file bytes
            save_png(map, dir / "a.png");
            save_png(load_saliency(dir / "a.png"), dir / "b.png");
            CHECK(read_file(dir / "a.png") == read_file(dir / "b.png"));
        }
    }
}

TEST_CASE("derive_seed") {
    CHECK(derive_seed(0, "a", WeatherClass::Fog, 1) == derive_seed(0, "a", WeatherClass::Fog, 1));
    CHECK(derive_seed(0, "a", WeatherClass::Fog, 1) != derive_seed(0, "a", WeatherClass::Fog, 2));
    CHECK(derive_seed(0, "a", WeatherClass::Fog, 1) == reference_fnv1a("0|a|fog|1"));
    CHECK(derive_seed(0, "a", WeatherClass::Fog, 2) == reference_fnv1a("0|a|fog|2"));
    CHECK(derive_seed(0, "img1", WeatherClass::Rain, 1) == reference_fnv1a("0|img1|rain|1"));
    // Values frozen from the reference above.
    CHECK(derive_seed(0, "img1", WeatherClass::Rain, 1) == 12545417719881825836ULL);
    CHECK(derive_seed(0, "a", WeatherClass::Fog, 1) == 7550188764428664499ULL);
    CHECK(derive_seed(18446744073709551615ULL, "x", WeatherClass::RainSnow, 3) ==
          reference_fnv1a("18446744073709551615|x|rain_snow|3"));
}

TEST_CASE("derive_seed has no collisions over 1e5 distinct inputs") {
    std::set<std::uint64_t> seen;
    std::size_t inputs = 0;
    for (std::uint64_t g = 0; g < 4; ++g) {
        for (int id = 0; id < 1000; ++id) {
            for (const auto c : kAllWeatherClasses) {
                for (int level = 1; level <= 3; ++level) {
                    if (c == WeatherClass::Clean && level > 1) continue;
                    seen.insert(derive_seed(g, "img" + std::to_string(id), c, level));
                    ++inputs;
                }
            }
        }
    }
    CHECK(inputs >= 100000);
    CHECK(seen.size() == inputs);
}

TEST_CASE("weather classes") {
    CHECK(kAllWeatherClasses.size() == 9);
    CHECK(index_of(WeatherClass::Clean) == 0);
    for (const auto c : kAllWeatherClasses) CHECK(weather_from_tag(tag_of(c)) == c);
    CHECK(is_mixed(WeatherClass::FogRain));
    CHECK(is_mixed(WeatherClass::FogSnow));
    CHECK(is_mixed(WeatherClass::RainSnow));
    CHECK_FALSE(is_mixed(WeatherClass::Fog));
    CHECK(make_weather_spec(WeatherClass::Clean, 3, 99) == WeatherSpec{WeatherClass::Clean, 1, 0});
    CHECK_THROWS_AS(make_weather_spec(WeatherClass::Fog, 4, 0), Error);
}

TEST_CASE("manifest persistence") {
    SUBCASE("empty manifest is a single header line") {
        DatasetManifest m;
        m.global_seed = 42;
        const auto text = serialize_manifest(m);
        CHECK(text == "{\"root\":\".\",\"global_seed\":42,\"format_version\":1}\n");
        CHECK(parse_manifest(text) == m);
    }
    SUBCASE("three records give four lines with fixed key order") {
        std::mt19937_64 rng(3);
        auto m = random_manifest(rng);
        m.records.resize(3, m.records.empty() ? SampleRecord{} : m.records.front());
        for (std::size_t i = 0; i < 3; ++i) {
            m.records[i].id = "r" + std::to_string(i);
            m.records[i].weather = WeatherSpec{WeatherClass::FogSnow, 2, 7};
        }
        const auto text = serialize_manifest(m);
        CHECK(std::count(text.begin(), text.end(), '\n') == 4);
        const auto second = text.substr(text.find('\n') + 1);
        CHECK(second.rfind("{\"id\":\"r0\",\"split\":", 0) == 0);
        CHECK(second.find("\"weather\":{\"class\":\"fog_snow\",\"level\":2,\"seed\":7},\"source_id\"") !=
              std::string::npos);
    }
    SUBCASE("round trip on randomized manifests") {
        std::mt19937_64 rng(5);
        TempDir dir("manifest");
        for (int trial = 0; trial < 50; ++trial) {
            const auto m = random_manifest(rng);
            write_manifest(m, dir / "m.jsonl");
            CHECK(read_manifest(dir / "m.jsonl") == m);
        }
    }
    SUBCASE("schema violations carry the line number") {
        const std::string text =
            "{\"root\":\".\",\"global_seed\":1,\"format_version\":1}\n"
            "{\"id\":\"a\",\"split\":\"train\",\"image_path\":\"i\",\"mask_path\":\"m\","
            "\"weather\":{\"class\":\"fog\",\"level\":1,\"seed\":0},\"source_id\":\"s\",\"source_dataset\":\"\"}\n"
            "{\"id\":\"b\",\"split\":\"train\",\"image_path\":\"i\",\"mask_path\":\"m\","
            "\"weather\":{\"class\":\"hail\",\"level\":1,\"seed\":0},\"source_id\":\"s\",\"source_dataset\":\"\"}\n";
        try {
            parse_manifest(text);
            FAIL("expected SchemaViolation");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SchemaViolation);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        CHECK(kind_of([] { parse_manifest("{\"root\":\".\"}\n"); }) == ErrorKind::SchemaViolation);
        CHECK(kind_of([] { parse_manifest("[1,2\n"); }) == ErrorKind::SchemaViolation);
        CHECK(kind_of([] { parse_manifest(""); }) == ErrorKind::SchemaViolation);
    }
}

TEST_CASE("validate_manifest") {
    DatasetManifest m;
    auto rec = [](std::string id, Split split, std::string source) {
        SampleRecord r;
        r.id = std::move(id);
        r.split = split;
        r.image_path = "images/" + r.id + ".png";
        r.mask_path = "masks/" + source + ".png";
        r.source_id = std::move(source);
        return r;
    };
    m.records = {rec("a1", Split::Train, "a"), rec("a2", Split::Train, "a"), rec("t1", Split::TestSynth, "t")};
    CHECK(validate_manifest(m).empty());

    auto dup = m;
    dup.records.push_back(rec("t1", Split::TestReal, "u"));
    CHECK(validate_manifest(dup).size() == 1);

    auto once = m;
    once.records.erase(once.records.begin());
    CHECK(validate_manifest(once).size() == 1);

    auto reused = m;
    reused.records.push_back(rec("t2", Split::TestSynth, "t"));
    CHECK(validate_manifest(reused).size() == 1);

    auto escape = m;
    escape.records[0].image_path = "../outside.png";
    CHECK(validate_manifest(escape).size() == 1);
}
