/*
 * Copyright 2026 The cfstripe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "cfstripe/types.hpp"

#include <cstdint>
#include <random>

namespace cfstripe {

// Random streams.
//
// Every stream is a std::mt19937_64 seeded from a SplitMix64 hash of
// (campaign seed, drop index, stream index). Drops and realizations therefore
// never share state and results do not depend on the order in which they are
// processed.
//
// Stream index layout within one drop:
//   kGeometryStream      user placement
//   r = 0, 1, ...        channel realization r (fading, pilot noise, data)

inline constexpr std::uint64_t kGeometryStream = 0xffffffffffffffffULL;
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix64(seed,drop,stream)";

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_stream(std::uint64_t seed, std::uint64_t drop, std::uint64_t stream);

    double uniform(double lo, double hi);
    double normal();

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance = 1.0);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cfstripe
