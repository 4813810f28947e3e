// Copyright 2026 The AFN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AFN_PARALLEL_H_
#define AFN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace afn {

// Worker count: AFN_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs fn(i) for i in [0, count). Work is split in contiguous chunks over at
// most thread_count() threads; the first exception thrown by any worker is
// rethrown on the caller. Callers write results into per-index slots so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace afn

#endif  // AFN_PARALLEL_H_
