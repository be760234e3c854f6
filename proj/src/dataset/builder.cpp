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
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "wxbench/dataset.hpp"
#include "wxbench/error.hpp"
#include "wxbench/rng.hpp"
#include "wxbench/seed.hpp"

namespace wxbench::dataset {

namespace {

SampleRecord make_record(std::string_view source_id, Split split, WeatherClass weather, int level,
                         std::uint64_t global_seed, std::string_view source_dataset) {
    const auto seed = weather == WeatherClass::Clean
                          ? std::uint64_t{0}
                          : derive_seed(global_seed, source_id, weather, level);
    SampleRecord r;
    r.weather = make_weather_spec(weather, level, seed);
    r.id = record_id(source_id, r.weather);
    r.split = split;
    r.image_path = image_rel_path(r.id);
    r.mask_path = mask_rel_path(source_id);
    r.source_id = std::string(source_id);
    r.source_dataset = std::string(source_dataset);
    return r;
}

} // namespace

std::string record_id(std::string_view source_id, const WeatherSpec& weather) {
    std::string id(source_id);
    id += "__";
    id += tag_of(weather.weather);
    id += "__L";
    id += std::to_string(weather.level);
    return id;
}

std::string image_rel_path(std::string_view record_id) {
    return "images/" + std::string(record_id) + ".png";
}

std::string mask_rel_path(std::string_view source_id) {
    return "masks/" + std::string(source_id) + ".png";
}

SplitResult split_base(std::span<const std::string> corpus_ids, const SplitPolicy& policy) {
    if (corpus_ids.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus contains no images");
    if (!(policy.train_fraction >= 0.0 && policy.train_fraction <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "train fraction must be in [0,1]");
    }
    std::vector<std::string> ids(corpus_ids.begin(), corpus_ids.end());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw Error(ErrorKind::InvalidArgument, "corpus ids must be unique");
    }

    Rng rng(policy.seed);
    for (std::size_t i = ids.size(); i > 1; --i) {
        const auto j = std::size_t(rng.uniform_int(0, std::int64_t(i) - 1));
        std::swap(ids[i - 1], ids[j]);
    }

    // The epsilon keeps e.g. 0.7 * 10 from flooring to 6.
    const auto n_train = std::min(
        ids.size(),
        std::size_t(std::floor(policy.train_fraction * double(ids.size()) + 1e-9)));
    SplitResult result;
    result.train.assign(ids.begin(), ids.begin() + std::ptrdiff_t(n_train));
    result.test.assign(ids.begin() + std::ptrdiff_t(n_train), ids.end());
    return result;
}

std::vector<SampleRecord> expand_train(std::span<const std::string> train_ids,
                                       const ExpansionPolicy& policy, std::uint64_t global_seed,
                                       std::string_view source_dataset) {
    const int n_noise = int(kNoiseClasses.size());
    if (policy.variants_min < 1 || policy.variants_max < policy.variants_min ||
        policy.variants_max > n_noise) {
        throw Error(ErrorKind::InvalidArgument, "variant range must lie within [1,8]");
    }
    std::vector<SampleRecord> records;
    for (const auto& source : train_ids) {
        Rng rng(derive_seed(global_seed, source, "expand_train", 0));
        const auto k = int(rng.uniform_int(policy.variants_min, policy.variants_max));

        auto classes = kNoiseClasses;
        for (int i = 0; i < k; ++i) {
            const auto j = std::size_t(rng.uniform_int(i, n_noise - 1));
            std::swap(classes[std::size_t(i)], classes[j]);
        }
        std::array<int, kNoiseClasses.size()> levels{};
        for (int i = 0; i < k; ++i) {
            levels[std::size_t(i)] = int(rng.uniform_int(kMinLevel, kMaxLevel));
        }
        if (rng.bernoulli(policy.retain_clean_prob)) {
            records.push_back(make_record(source, Split::Train, WeatherClass::Clean, kMinLevel,
                                          global_seed, source_dataset));
        }
        for (int i = 0; i < k; ++i) {
            records.push_back(make_record(source, Split::Train, classes[std::size_t(i)],
                                          levels[std::size_t(i)], global_seed, source_dataset));
        }
    }
    return records;
}

std::vector<SampleRecord> expand_test(std::span<const std::string> test_ids,
                                      std::uint64_t global_seed, std::string_view source_dataset) {
    // Classes are dealt from consecutive shuffled decks of all 9, over a
    // shuffled source order: each source is uniform over the classes and the
    // class counts differ by at most one.
    std::vector<std::string> order(test_ids.begin(), test_ids.end());
    std::sort(order.begin(), order.end());
    Rng deal(derive_seed(global_seed, "", "expand_test", 0));
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[std::size_t(deal.uniform_int(0, std::int64_t(i) - 1))]);
    }
    std::map<std::string, WeatherClass, std::less<>> dealt;
    auto deck = kAllWeatherClasses;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto slot = i % deck.size();
        if (slot == 0) {
            for (std::size_t k = deck.size(); k > 1; --k) {
                std::swap(deck[k - 1], deck[std::size_t(deal.uniform_int(0, std::int64_t(k) - 1))]);
            }
        }
        dealt.emplace(order[i], deck[slot]);
    }

    std::vector<SampleRecord> records;
    records.reserve(test_ids.size());
    for (const auto& source : test_ids) {
        Rng rng(derive_seed(global_seed, source, "expand_test", 0));
        const auto level = int(rng.uniform_int(kMinLevel, kMaxLevel));
        records.push_back(
            make_record(source, Split::TestSynth, dealt.at(source), level, global_seed, source_dataset));
    }
    return records;
}

DatasetManifest build_manifest(std::span<const std::string> corpus_ids, const SplitPolicy& split,
                               const ExpansionPolicy& expansion, std::uint64_t global_seed,
                               std::string_view source_dataset) {
    auto parts = split_base(corpus_ids, split);
    // Records follow sorted source order within each split.
    std::sort(parts.train.begin(), parts.train.end());
    std::sort(parts.test.begin(), parts.test.end());

    DatasetManifest manifest;
    manifest.root = ".";
    manifest.global_seed = global_seed;
    manifest.records = expand_train(parts.train, expansion, global_seed, source_dataset);
    auto test = expand_test(parts.test, global_seed, source_dataset);
    manifest.records.insert(manifest.records.end(), std::make_move_iterator(test.begin()),
                            std::make_move_iterator(test.end()));
    return manifest;
}

} // namespace wxbench::dataset
