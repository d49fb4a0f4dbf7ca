// Copyright 2026 The detpart Authors
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

#include <omp.h>

#include <atomic>
#include <cstddef>
#include <cstdint>

namespace detpart::parallel {

// Below this many items a kernel runs on the calling thread. Results never
// depend on it; it only avoids fork/join overhead on tiny inputs.
inline constexpr std::size_t kSequentialCutoff = 4096;

inline int max_threads() { return omp_get_max_threads(); }

inline int thread_id() { return omp_get_thread_num(); }

inline bool worth_parallel(std::size_t n) { return n >= kSequentialCutoff && max_threads() > 1; }

// Sets the OpenMP team size for the lifetime of the object.
class ScopedThreadCount {
 public:
  explicit ScopedThreadCount(int threads) : previous_(omp_get_max_threads()) {
    omp_set_num_threads(threads < 1 ? 1 : threads);
  }
  ~ScopedThreadCount() { omp_set_num_threads(previous_); }
  ScopedThreadCount(const ScopedThreadCount&) = delete;
  ScopedThreadCount& operator=(const ScopedThreadCount&) = delete;

 private:
  int previous_;
};

template <typename T>
inline T fetch_add(T& target, T delta) {
  return std::atomic_ref<T>(target).fetch_add(delta, std::memory_order_relaxed);
}

template <typename T>
inline T atomic_load(T& target) {
  return std::atomic_ref<T>(target).load(std::memory_order_relaxed);
}

// Test-and-test-and-set spin lock on a byte that lives inside a plain array.
class SpinGuard {
 public:
  explicit SpinGuard(std::uint8_t& flag) : flag_(flag) {
    for (;;) {
      std::uint8_t expected = 0;
      if (flag_.compare_exchange_weak(expected, 1, std::memory_order_acquire)) return;
      while (flag_.load(std::memory_order_relaxed) != 0) {
      }
    }
  }
  ~SpinGuard() { flag_.store(0, std::memory_order_release); }
  SpinGuard(const SpinGuard&) = delete;
  SpinGuard& operator=(const SpinGuard&) = delete;

 private:
  std::atomic_ref<std::uint8_t> flag_;
};

}  // namespace detpart::parallel
