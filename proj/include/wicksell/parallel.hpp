// Copyright 2026 The wicksell authors.
//
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

#ifndef WICKSELL_PARALLEL_HPP_
#define WICKSELL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace wicksell {

/// Worker count taken from WICKSELL_WORKERS, falling back to the hardware
/// concurrency (at least 1).
int default_workers();

/// Runs body(i) for i in [0, n) on up to `workers` threads.  Each index is
/// independent, so results never depend on the schedule.  The first
/// exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace wicksell

#endif  // WICKSELL_PARALLEL_HPP_
