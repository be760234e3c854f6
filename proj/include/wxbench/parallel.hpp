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

#pragma once

#include <cstddef>
#include <functional>

namespace wxbench {

/// Worker count from an explicit request, else WXBENCH_THREADS, else the
/// hardware concurrency. Always at least 1.
int resolve_worker_count(int requested = 0);

/// Runs body(i) for i in [0, count) on up to \p workers threads. Indices are
/// claimed dynamically; callers write results into per-index slots so the
/// outcome never depends on scheduling. The first exception thrown by any
/// body is rethrown after all workers stop.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

} // namespace wxbench
