// Copyright 2026 The forge-sim Authors
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
#include <cstddef>
#include <cstdint>
#include <random>

namespace forgesim {

/// Seeded variate stream shared by every sampler in a run.
///
/// The raw generator is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Variates are derived without the standard distributions (those are
/// implementation-defined), so the stream is identical on every platform:
///
///   uniform01()          = (next() >> 11) * 2^-53            in [0, 1)
///   uniform_index(n)     = min(n - 1, floor(uniform01() * n))
///   uniform(lo, hi)      = lo + (hi - lo) * uniform01()
///
/// Each call consumes exactly one 64-bit output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::size_t uniform_index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return std::min(i, n - 1);
  }

  /// Number of variates consumed so far.
  [[nodiscard]] std::uint64_t draws() const { return draws_; }

  friend bool operator==(const Rng& a, const Rng& b) {
    return a.engine_ == b.engine_ && a.draws_ == b.draws_;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace forgesim
