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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "naive_metrics.hpp"
#include "test_support.hpp"
#include "wxbench/classification.hpp"
#include "wxbench/error.hpp"
#include "wxbench/eval_report.hpp"
#include "wxbench/metrics.hpp"

using namespace wxbench;
using namespace wxbench::metrics;
using wxbench::testing::as_map;
using wxbench::testing::inverted;
using wxbench::testing::random_map;
using wxbench::testing::random_mask;
using wxbench::testing::rect_mask;

namespace {

constexpr double kTol = 1e-9;

SaliencyMap map_of(int w, int h, std::vector<std::uint8_t> v) { return SaliencyMap(w, h, std::move(v)); }

SaliencyMap constant_map(int w, int h, std::uint8_t v) {
    return SaliencyMap(w, h, std::vector<std::uint8_t>(std::size_t(w) * std::size_t(h), v));
}

template <class R>
R flipped(const R& r) {
    std::vector<std::uint8_t> out(r.size());
    for (int y = 0; y < r.height(); ++y) {
        for (int x = 0; x < r.width(); ++x) {
            out[std::size_t(y * r.width() + x)] = r.at(r.width() - 1 - x, y);
        }
    }
    return R(r.width(), r.height(), std::move(out));
}

/// Mask whose foreground probability varies per instance, including the
/// empty and full extremes.
GroundTruthMask mixed_mask(int w, int h, std::mt19937_64& rng, int i) {
    if (i % 25 == 0) return random_mask(w, h, rng, 0.0);
    if (i % 25 == 1) return random_mask(w, h, rng, 1.0);
    return random_mask(w, h, rng, double(rng() % 1000) / 1000.0);
}

void check_sweep_against_oracle(const SaliencyMap& p, const GroundTruthMask& g) {
    const auto x = oracle::make_pair(p, g);
    const auto ref = oracle::sweep(x);
    const auto got = pr_sweep(p, g);
    for (std::size_t k = 0; k < 256; ++k) {
        REQUIRE(std::abs(got.precision[k] - ref.p[k]) <= kTol);
        REQUIRE(std::abs(got.recall[k] - ref.r[k]) <= kTol);
        REQUIRE(std::abs(got.f[k] - ref.f[k]) <= kTol);
        REQUIRE(std::abs(got.e[k] - ref.e[k]) <= kTol);
    }
}

} // namespace

TEST_CASE("mae") {
    const GroundTruthMask gt(2, 2, {255, 0, 0, 0});
    CHECK(mae(map_of(2, 2, {255, 0, 0, 0}), gt) == 0.0);
    CHECK(mae(map_of(2, 2, {0, 255, 255, 255}), gt) == 1.0);
    // 0.5 is not a byte; 127.5/255 is approximated by the byte mean below.
    CHECK(mae(map_of(2, 2, {255, 0, 255, 0}), gt) == 0.25);
    const double half = 128.0 / 255.0;
    CHECK(std::abs(mae(map_of(2, 2, {255, 0, 128, 0}), gt) - half / 4.0) <= kTol);
    CHECK(std::abs(mae(map_of(2, 2, {255, 0, 128, 0}), gt) - 0.125) < 0.001);
}

TEST_CASE("sweep conventions") {
    SUBCASE("binary prediction equal to gt") {
        const auto gt = rect_mask(16, 16, 2, 2, 10, 12);
        const auto s = pr_sweep(as_map(gt), gt);
        for (std::size_t k = 0; k < 256; ++k) {
            CHECK(s.precision[k] == 1.0);
            CHECK(s.recall[k] == 1.0);
            CHECK(s.f[k] == 1.0);
            CHECK(s.e[k] == 1.0);
        }
    }
    SUBCASE("empty gt and all-zero prediction") {
        const GroundTruthMask gt(8, 8, std::vector<std::uint8_t>(64, 0));
        const auto s = pr_sweep(constant_map(8, 8, 0), gt);
        for (std::size_t k = 1; k < 256; ++k) {
            CHECK(s.recall[k] == 0.0);
            CHECK(s.precision[k] == 1.0);
            CHECK(s.f[k] == 0.0);
            CHECK(s.e[k] == 1.0);
        }
    }
    SUBCASE("constant 0.4 with half-foreground gt") {
        const auto gt = rect_mask(8, 8, 0, 0, 4, 8);
        const auto pred = constant_map(8, 8, 102);  // 102/255 = 0.4
        CHECK(adaptive_threshold(pred) == doctest::Approx(0.8));
        CHECK(f_measures(pred, gt).adaptive == 0.0);
    }
}

TEST_CASE("s_measure") {
    const GroundTruthMask empty(8, 8, std::vector<std::uint8_t>(64, 0));
    const GroundTruthMask full(8, 8, std::vector<std::uint8_t>(64, 255));
    CHECK(s_measure(constant_map(8, 8, 0), empty) == 1.0);
    CHECK(s_measure(constant_map(8, 8, 255), empty) == 0.0);
    CHECK(s_measure(constant_map(8, 8, 255), full) == 1.0);
    CHECK(s_measure(constant_map(8, 8, 0), full) == 0.0);
    const auto gt = rect_mask(16, 16, 3, 4, 11, 9);
    CHECK(s_measure(as_map(gt), gt) == 1.0);
    CHECK(s_measure(inverted(as_map(gt)), gt) < 0.1);
}

TEST_CASE("e_measure degenerate rules") {
    const GroundTruthMask empty(8, 8, std::vector<std::uint8_t>(64, 0));
    const GroundTruthMask full(8, 8, std::vector<std::uint8_t>(64, 255));
    CHECK(e_measures(constant_map(8, 8, 0), empty).max == 1.0);
    CHECK(e_measures(constant_map(8, 8, 255), full).mean == 1.0);
    const auto gt = rect_mask(16, 16, 0, 0, 5, 16);
    const auto e = e_measures(as_map(gt), gt);
    CHECK(e.adaptive == 1.0);
    CHECK(e.mean == 1.0);
    CHECK(e.max == 1.0);
}

TEST_CASE("oracle agreement") {
    std::mt19937_64 rng(2026);
    SUBCASE("sweep on 100 random 8x8 pairs") {
        for (int i = 0; i < 100; ++i) {
            const auto g = mixed_mask(8, 8, rng, i);
            check_sweep_against_oracle(random_map(8, 8, rng, i % 2 == 0), g);
        }
    }
    SUBCASE("scalars on random 16x16 pairs") {
        for (int i = 0; i < 100; ++i) {
            const auto g = mixed_mask(16, 16, rng, i);
            const auto p = random_map(16, 16, rng, i % 3 == 0);
            const auto x = oracle::make_pair(p, g);
            const auto ref = oracle::sweep(x);
            const auto got = evaluate_pair(p, g).scalars;
            CHECK(std::abs(got.mae - oracle::mae(x)) <= kTol);
            CHECK(std::abs(got.s - oracle::s_measure(x)) <= kTol);
            CHECK(std::abs(got.f_adp - oracle::f_adaptive(x)) <= kTol);
            CHECK(std::abs(got.f_mean - oracle::mean_of(ref.f)) <= kTol);
            CHECK(std::abs(got.f_max - oracle::max_of(ref.f)) <= kTol);
            CHECK(std::abs(got.e_adp - oracle::e_adaptive(x)) <= kTol);
            CHECK(std::abs(got.e_mean - oracle::mean_of(ref.e)) <= kTol);
            CHECK(std::abs(got.e_max - oracle::max_of(ref.e)) <= kTol);
        }
    }
    SUBCASE("anti-prediction") {
        const auto g = rect_mask(16, 16, 4, 4, 12, 10);
        const auto p = inverted(as_map(g));
        const auto x = oracle::make_pair(p, g);
        const auto got = evaluate_pair(p, g).scalars;
        CHECK(got.mae == 1.0);
        CHECK(std::abs(got.f_max - oracle::max_of(oracle::sweep(x).f)) <= kTol);
        CHECK(std::abs(got.s - oracle::s_measure(x)) <= kTol);
    }
}

TEST_CASE("metric invariants") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const int w = 8 + int(rng() % 17), h = 8 + int(rng() % 17);
        const auto g = mixed_mask(w, h, rng, i);
        const auto p = random_map(w, h, rng, i % 2 == 1);
        const auto r = evaluate_pair(p, g);
        for (std::size_t k = 0; k < kScalarNames.size(); ++k) {
            const double v = scalar_by_index(r.scalars, k);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(std::abs(mae(p, g) + mae(inverted(p), g) - 1.0) <= kTol);
        CHECK(r.scalars.f_max >= r.scalars.f_mean);
        CHECK(r.scalars.e_max >= r.scalars.e_mean);
        const auto x = oracle::make_pair(p, g);
        std::size_t last_positive = x.bytes.size() + 1;
        for (std::size_t k = 1; k < 256; ++k) {
            CHECK(r.sweep.recall[k] <= r.sweep.recall[k - 1]);
            std::size_t positives = 0;
            for (const int b : oracle::binarize(x, double(k) / 255.0)) positives += std::size_t(b);
            CHECK(positives <= last_positive);
            last_positive = positives;
        }
        const auto f = evaluate_pair(flipped(p), flipped(g)).scalars;
        CHECK(std::abs(f.mae - r.scalars.mae) <= kTol);
        CHECK(std::abs(f.s - r.scalars.s) < 0.05);  // the centroid split is not mirror-symmetric
        CHECK(std::abs(f.f_max - r.scalars.f_max) <= kTol);
        CHECK(std::abs(f.e_mean - r.scalars.e_mean) <= kTol);
        CHECK(std::abs(f.e_adp - r.scalars.e_adp) <= kTol);
    }
}

TEST_CASE("dimension mismatch") {
    const GroundTruthMask gt(8, 8, std::vector<std::uint8_t>(64, 0));
    const auto pred = constant_map(8, 9, 0);
    try {
        evaluate_pair(pred, gt);
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimMismatch);
    }
    CHECK_THROWS_AS(mae(pred, gt), Error);
    CHECK_THROWS_AS(s_measure(pred, gt), Error);
    CHECK_THROWS_AS(pr_sweep(pred, gt), Error);
}

TEST_CASE("aggregate") {
    ScalarMetrics a{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    ScalarMetrics b{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    CHECK(aggregate(std::vector<ScalarMetrics>{a}) == a);
    const auto mid = aggregate(std::vector<ScalarMetrics>{a, b});
    for (std::size_t k = 0; k < kScalarNames.size(); ++k) {
        CHECK(scalar_by_index(mid, k) == doctest::Approx((scalar_by_index(a, k) + scalar_by_index(b, k)) / 2));
    }
    try {
        aggregate(std::vector<ScalarMetrics>{});
        FAIL("expected EmptyList");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyList);
    }

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ScalarMetrics> items(1000);
    std::vector<ThresholdSweep> sweeps(1000);
    for (auto& m : items) m = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    for (auto& s : sweeps) {
        for (auto& v : s.precision) v = u(rng);
        for (auto& v : s.f) v = u(rng);
    }
    const auto one = aggregate(items, 1);
    const auto eight = aggregate(items, 8);
    CHECK(std::memcmp(&one, &eight, sizeof one) == 0);
    const auto s1 = aggregate_sweeps(sweeps, 1);
    const auto s8 = aggregate_sweeps(sweeps, 8);
    CHECK(std::memcmp(&s1, &s8, sizeof s1) == 0);
    double naive = 0.0;
    for (const auto& m : items) naive += m.s;
    CHECK(std::abs(one.s - naive / 1000.0) <= 1e-12);
}

TEST_CASE("classification_eval") {
    std::vector<WeatherClass> truth;
    for (int i = 0; i < 27; ++i) truth.push_back(*weather_from_index(i % 9));
    const auto perfect = classification_eval(truth, truth);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.total == 27);
    for (int t = 0; t < 9; ++t) {
        for (int p = 0; p < 9; ++p) CHECK(perfect.confusion[std::size_t(t)][std::size_t(p)] == (t == p ? 3u : 0u));
    }
    const std::vector<WeatherClass> zeros(truth.size(), WeatherClass::Clean);
    CHECK(classification_eval(zeros, truth).accuracy == doctest::Approx(1.0 / 9.0));

    std::mt19937_64 rng(17);
    std::vector<WeatherClass> a(9000), b(9000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = *weather_from_index(int(rng() % 9));
        b[i] = *weather_from_index(int(rng() % 9));
    }
    CHECK(std::abs(classification_eval(a, b).accuracy - 1.0 / 9.0) <= 0.02);
    CHECK_THROWS_AS(classification_eval(a, truth), Error);
    CHECK_THROWS_AS(classification_eval(std::vector<WeatherClass>{}, std::vector<WeatherClass>{}), Error);
}

TEST_CASE("report json round trip") {
    std::mt19937_64 rng(8);
    EvalReport report;
    std::vector<ScalarMetrics> scalars;
    std::vector<ThresholdSweep> sweeps;
    for (int i = 0; i < 5; ++i) {
        const auto g = random_mask(16, 16, rng, 0.3);
        const auto r = evaluate_pair(random_map(16, 16, rng), g);
        report.per_image.push_back({"img" + std::to_string(i), r.scalars});
        scalars.push_back(r.scalars);
        sweeps.push_back(r.sweep);
    }
    report.aggregate = aggregate(scalars);
    report.curves = aggregate_sweeps(sweeps);
    report.missing = {"gone"};
    std::vector<WeatherClass> labels{WeatherClass::Fog, WeatherClass::Rain, WeatherClass::Fog};
    report.classification = classification_eval(labels, labels);

    const auto text = report_to_json(report);
    const auto back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    REQUIRE(back.per_image.size() == 5);
    CHECK(back.per_image[3].scalars == report.per_image[3].scalars);
    CHECK(back.aggregate == report.aggregate);
    CHECK(back.curves.f == report.curves.f);
    REQUIRE(back.classification.has_value());
    CHECK(back.classification->accuracy == 1.0);
    CHECK(back.missing == report.missing);
    CHECK_THROWS_AS(report_from_json("{\"per_image\": 3}"), Error);
    CHECK_THROWS_AS(report_from_json("not json"), Error);

    const auto csv = per_image_csv(report);
    CHECK(csv.rfind("id,mae,s,f_adp,f_mean,f_max,e_adp,e_mean,e_max\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
