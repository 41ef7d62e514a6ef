// Copyright 2026 The hiddenphase Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace hp {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trajectory `index` in an ensemble seeded with `master`:
/// splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15)).
/// Any single trajectory can be replayed from (master, index) alone.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Random stream used by every sampler. Wraps mt19937_64 and converts
/// words to doubles by hand so draws are identical on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    /// One variate in [0, 1) with 53 random bits. Consumes one engine word.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hp
