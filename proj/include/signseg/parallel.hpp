// Copyright 2026 The signseg Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace signseg {

/// Process-wide worker cap; 0 means "use hardware concurrency".
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> value{0};
  return value;
}

inline void set_default_threads(int threads) { thread_setting() = threads; }

inline int resolve_threads(int requested) {
  int t = requested > 0 ? requested : thread_setting().load();
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(t, 1);
}

/// Runs body(i) for i in [0, count). Work is handed out by an atomic counter,
/// so callers must write results by index to stay independent of scheduling.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const int workers =
      static_cast<int>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace signseg
