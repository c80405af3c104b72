// Copyright 2026 The OSL Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OSL_PARALLEL_H_
#define OSL_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace osl {

// Worker count: OSL_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int WorkerCount();

// Runs body(i) for i in [0, n). Each index is visited exactly once; bodies
// must only write to per-index state so results do not depend on scheduling.
// The first exception thrown by any body is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace osl

#endif  // OSL_PARALLEL_H_
