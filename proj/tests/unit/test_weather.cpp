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

#include <numeric>
#include <set>

#include "fog_oracle.hpp"
#include "test_support.hpp"
#include "wxbench/seed.hpp"
#include "wxbench/weather.hpp"

using namespace wxbench;
using namespace wxbench::synth;

namespace {

double mean_brightness(const ImageBuffer& image) {
    const auto d = image.data();
    return std::accumulate(d.begin(), d.end(), 0.0) / double(d.size());
}

double mean_abs_deviation(const ImageBuffer& a, const ImageBuffer& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::abs(double(a.data()[i]) - double(b.data()[i]));
    return s / double(a.data().size());
}

ImageBuffer constant_image(int w, int h, std::uint8_t v, int channels = 3) {
    return ImageBuffer(w, h, channels, std::vector<std::uint8_t>(std::size_t(w * h * channels), v));
}

} // namespace

TEST_CASE("parameter tables") {
    CHECK(fog_params(1).density == 0.30);
    CHECK(fog_params(2).density == 0.55);
    CHECK(fog_params(3).density == 0.80);
    CHECK(fog_params(2).airlight == 240);
    CHECK(exposure_params(1).dark_gamma == 1.8);
    CHECK(exposure_params(3).dark_gamma == 3.2);
    CHECK(exposure_params(2).over_gain == 2.0);
    for (int level = 1; level <= 3; ++level) {
        const auto rain = rain_params(level);
        CHECK(rain.angle_min_deg == -20.0);
        CHECK(rain.angle_max_deg == -10.0);
        CHECK(snow_params(level).radius_min == 1.0);
        CHECK(snow_params(level).radius_max == 3.0);
        CHECK(snow_params(level).brightness_min == 230.0);
    }
    CHECK_THROWS(fog_params(0));
    CHECK_THROWS(rain_params(4));
}

TEST_CASE("value noise stays in [0,1] and is seeded") {
    const ValueNoise a(50, 30, 7.0, 1), b(50, 30, 7.0, 1), c(50, 30, 7.0, 2);
    std::vector<double> ra, rb, rc;
    bool differs = false;
    for (int y = 0; y < 30; ++y) {
        a.sample_row(y, ra);
        b.sample_row(y, rb);
        c.sample_row(y, rc);
        CHECK(ra == rb);
        differs = differs || ra != rc;
        for (double v : ra) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK(differs);
}

TEST_CASE("apply_fog") {
    const auto image = testing::scene_image(40, 24, 3);

    SUBCASE("zero density is the identity") {
        CHECK(apply_fog(image, FogParams{0.0, 240, 64.0}, 9) == image);
    }
    SUBCASE("a constant image at the airlight is a fixed point") {
        const auto flat = constant_image(16, 16, 240);
        for (double d : {0.3, 0.55, 0.8, 1.0}) CHECK(apply_fog(flat, FogParams{d, 240, 64.0}, 5) == flat);
    }
    SUBCASE("8x8 golden from the scalar oracle") {
        const auto small = testing::scene_image(8, 8, 4);
        const auto out = apply_fog(small, FogParams{0.8, 240, 64.0}, 7);
        const auto golden = oracle::fog(small, 0.8, 240.0, 64.0, 7);
        CHECK(out == golden);
        const auto d = golden.data();
        CHECK(fnv1a64(std::string_view(reinterpret_cast<const char*>(d.data()), d.size())) == 16313516026345754050ULL);
    }
    SUBCASE("oracle agreement on other sizes, scales and channel counts") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto in = testing::scene_image(17 + int(seed) * 13, 9 + int(seed) * 7, seed);
            const double scale = 3.0 + double(seed) * 11.0;
            CHECK(apply_fog(in, FogParams{0.55, 240, scale}, seed) == oracle::fog(in, 0.55, 240.0, scale, seed));
        }
        const auto gray = constant_image(12, 12, 30, 1);
        CHECK(apply_fog(gray, FogParams{0.8, 240, 4.0}, 1) == oracle::fog(gray, 0.8, 240.0, 4.0, 1));
    }
}

TEST_CASE("apply_rain") {
    const auto image = testing::scene_image(64, 64, 8);
    auto params = rain_params(3);

    SUBCASE("alpha zero is the identity") {
        params.alpha = 0.0;
        CHECK(apply_rain(image, params, 3) == image);
    }
    SUBCASE("zero streaks is the identity") {
        params.streaks_per_megapixel = 0.0;
        CHECK(apply_rain(image, params, 3) == image);
    }
    SUBCASE("deterministic under a fixed seed, seed-sensitive otherwise") {
        CHECK(apply_rain(image, params, 3) == apply_rain(image, params, 3));
        CHECK_FALSE(apply_rain(image, params, 3) == apply_rain(image, params, 4));
    }
    SUBCASE("streaks only brighten a dark frame") {
        const auto dark = constant_image(64, 64, 10);
        const auto out = apply_rain(dark, params, 1);
        for (auto v : out.data()) CHECK(v >= 10);
        CHECK(mean_brightness(out) > 10.0);
    }
}

TEST_CASE("apply_snow") {
    const auto image = testing::scene_image(64, 64, 9);
    auto params = snow_params(2);

    SUBCASE("zero density is the identity") {
        params.flakes_per_megapixel = 0.0;
        CHECK(apply_snow(image, params, 3) == image);
    }
    SUBCASE("deterministic under a fixed seed") {
        CHECK(apply_snow(image, params, 3) == apply_snow(image, params, 3));
        CHECK_FALSE(apply_snow(image, params, 3) == apply_snow(image, params, 5));
    }
    SUBCASE("mean brightness strictly increases on black") {
        const auto black = constant_image(64, 64, 0);
        for (int level = 1; level <= 3; ++level) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                CHECK(mean_brightness(apply_snow(black, snow_params(level), seed)) > 0.0);
            }
        }
    }
}

TEST_CASE("apply_dark") {
    auto ramp = ImageBuffer(16, 16, 1);
    for (std::size_t i = 0; i < 256; ++i) ramp.data()[i] = std::uint8_t(i);

    const auto dark = apply_dark(ramp, 2.5);
    CHECK(dark.data()[0] == 0);
    CHECK(dark.data()[255] == 255);
    // 255 * (128/255)^2.5 = 45.5213, rounds to 46
    CHECK(dark.data()[128] == 46);
    CHECK(apply_dark(ramp, 1.0) == ramp);
    for (std::size_t i = 1; i < 256; ++i) CHECK(dark.data()[i] >= dark.data()[i - 1]);
}

TEST_CASE("apply_overexposure") {
    auto ramp = ImageBuffer(16, 16, 1);
    for (std::size_t i = 0; i < 256; ++i) ramp.data()[i] = std::uint8_t(i);
    CHECK(apply_overexposure(ramp, 1.0) == ramp);
    CHECK(apply_overexposure(ramp, 2.0).data()[200] == 255);
    CHECK(apply_overexposure(ramp, 1.5).data()[100] == 150);
}

TEST_CASE("degrade") {
    const auto image = testing::scene_image(96, 96, 21);

    SUBCASE("clean is the identity") {
        CHECK(degrade(image, make_weather_spec(WeatherClass::Clean, 1, 0)) == image);
    }
    SUBCASE("mixed classes compose their constituents in fixed order") {
        for (int level = 1; level <= 3; ++level) {
            const WeatherSpec fr{WeatherClass::FogRain, level, 77};
            CHECK(degrade(image, fr) ==
                  apply_rain(apply_fog(image, fog_params(level), constituent_seed(fr, WeatherClass::Fog)),
                             rain_params(level), constituent_seed(fr, WeatherClass::Rain)));
            const WeatherSpec fs{WeatherClass::FogSnow, level, 77};
            CHECK(degrade(image, fs) ==
                  apply_snow(apply_fog(image, fog_params(level), constituent_seed(fs, WeatherClass::Fog)),
                             snow_params(level), constituent_seed(fs, WeatherClass::Snow)));
            const WeatherSpec rs{WeatherClass::RainSnow, level, 77};
            CHECK(degrade(image, rs) ==
                  apply_snow(apply_rain(image, rain_params(level), constituent_seed(rs, WeatherClass::Rain)),
                             snow_params(level), constituent_seed(rs, WeatherClass::Snow)));
        }
        const WeatherSpec fr{WeatherClass::FogRain, 2, 5};
        CHECK(constituent_seed(fr, WeatherClass::Fog) == derive_seed(5, "fog_rain", WeatherClass::Fog, 2));
    }
    SUBCASE("9 classes x 3 levels give 25 distinct outputs") {
        std::vector<ImageBuffer> outputs;
        for (const auto c : kAllWeatherClasses) {
            for (int level = 1; level <= 3; ++level) {
                outputs.push_back(degrade(image, make_weather_spec(c, level, derive_seed(0, "x", c, level))));
            }
        }
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            bool unique = true;
            for (std::size_t j = 0; j < i; ++j) unique = unique && !(outputs[i] == outputs[j]);
            distinct += unique;
        }
        CHECK(distinct == 25);
    }
    SUBCASE("shape is preserved and repeated calls are identical") {
        for (const auto c : kAllWeatherClasses) {
            const auto spec = make_weather_spec(c, 2, 1234);
            const auto out = degrade(image, spec);
            CHECK(out.width() == image.width());
            CHECK(out.height() == image.height());
            CHECK(out.channels() == image.channels());
            CHECK(out == degrade(image, spec));
        }
    }
    SUBCASE("severity grows with level for fog and dark") {
        double previous_fog = 0.0, previous_dark = 256.0;
        for (int level = 1; level <= 3; ++level) {
            const auto fog = degrade(image, WeatherSpec{WeatherClass::Fog, level, 99});
            const double mad = mean_abs_deviation(fog, image);
            CHECK(mad >= previous_fog);
            previous_fog = mad;
            const double brightness = mean_brightness(degrade(image, WeatherSpec{WeatherClass::Dark, level, 0}));
            CHECK(brightness <= previous_dark);
            previous_dark = brightness;
        }
    }
}
