// Copyright 2026 The tlvd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace tlvd {

// Process-wide worker count used by parallel_for. Initialized from the
// TLVD_WORKERS environment variable (default 1).
int worker_count();
void set_worker_count(int workers);

// Calls fn(i) for every i in [0, count). Work items are independent and
// each writes only its own outputs, so results do not depend on the number
// of workers. Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tlvd
