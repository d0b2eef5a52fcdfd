// Copyright 2026 The cbfrrt Authors
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
#include <random>

namespace cbfrrt {

// Seeded generator with a pinned sampling sequence.
//
// std::*_distribution output is implementation-defined, so the transforms
// from raw 64-bit draws are spelled out here: every planner run is fully
// determined by its seed on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  double uniform(double lo, double hi);

  // Uniform integer in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Standard normal via Box-Muller; consumes exactly two raw draws.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace cbfrrt
