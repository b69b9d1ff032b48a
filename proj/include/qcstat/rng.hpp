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

#include <cstdint>

namespace qcstat {

// Generator "splitmix64-v1": the k-th output for a seed is
// mix(seed + (k + 1) * GAMMA) with the splitmix64 finalizer. Outputs are a
// pure function of (seed, counter), so any worker can evaluate any position
// without shared state and results are identical across worker counts.
struct CounterRng {
  std::uint64_t seed = 0;

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const {
    return mix(seed + (counter + 1) * kGamma);
  }

  // Rademacher sign in {-1, +1} from the top bit of the counter stream.
  double sign_at(std::uint64_t counter) const {
    return (at(counter) >> 63) ? -1.0 : 1.0;
  }
};

}  // namespace qcstat
