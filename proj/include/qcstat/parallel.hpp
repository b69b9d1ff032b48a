// Copyright 2026 The qcstat developers
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

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qcstat {

// Worker count resolution: explicit argument if > 0, else the QCSTAT_WORKERS
// environment variable, else 1.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCSTAT_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// Runs fn(block_index, begin, end) over [0, total) split into fixed-size
// blocks. Blocks are claimed by an atomic counter, so scheduling varies with
// the worker count but the block boundaries never do; callers that store one
// partial result per block and combine them in block order get bit-identical
// results for any worker count.
inline void for_each_block(std::size_t total, std::size_t block_size,
                           int workers,
                           const std::function<void(std::size_t, std::size_t,
                                                    std::size_t)>& fn) {
  const std::size_t num_blocks = (total + block_size - 1) / block_size;
  workers = resolve_workers(workers);
  if (workers <= 1 || num_blocks <= 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) {
      const std::size_t begin = b * block_size;
      const std::size_t end = std::min(total, begin + block_size);
      fn(b, begin, end);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= num_blocks) return;
      const std::size_t begin = b * block_size;
      const std::size_t end = std::min(total, begin + block_size);
      fn(b, begin, end);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace qcstat
