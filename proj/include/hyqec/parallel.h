// Copyright 2026 The hyqec Authors
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

#ifndef HYQEC_PARALLEL_H
#define HYQEC_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hyqec {

/// Runs job(0) .. job(jobs - 1) on up to `workers` threads pulling from a
/// shared counter. The first exception thrown by any job is rethrown.
inline void run_parallel(size_t jobs, size_t workers, const std::function<void(size_t)> &job) {
    workers = std::max<size_t>(1, std::min(workers, jobs));
    if (workers == 1) {
        for (size_t j = 0; j < jobs; j++) {
            job(j);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&]() {
            try {
                for (size_t j = next++; j < jobs; j = next++) {
                    job(j);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

/// Number of hardware threads, at least one.
inline size_t default_workers() {
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hyqec

#endif
