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

#include "wxbench/classification.hpp"

#include "wxbench/error.hpp"

namespace wxbench::metrics {

ClassificationEval classification_eval(std::span<const WeatherClass> predicted,
                                       std::span<const WeatherClass> truth) {
    if (predicted.size() != truth.size()) {
        throw Error(ErrorKind::InvalidArgument, "predicted and true label counts differ");
    }
    if (truth.empty()) throw Error(ErrorKind::EmptyList, "no labels to evaluate");
    ClassificationEval out;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = std::size_t(index_of(truth[i]));
        const auto p = std::size_t(index_of(predicted[i]));
        ++out.confusion[t][p];
        if (t == p) ++correct;
    }
    out.total = truth.size();
    out.accuracy = double(correct) / double(out.total);
    return out;
}

} // namespace wxbench::metrics
