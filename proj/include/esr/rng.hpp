// Copyright 2026 The ESR Authors
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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

#include "esr/bitvec.hpp"

namespace esr {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic random stream. Each shot gets its own stream derived from
/// (master_seed, shot), so results do not depend on which thread ran the shot.
///
/// Only raw 64-bit engine output is consumed (no std:: distributions), which
/// keeps sample sequences identical across standard library implementations.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    static Rng for_shot(std::uint64_t master_seed, std::uint64_t shot);

    static constexpr result_type min() {
        return std::numeric_limits<result_type>::min();
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform vector in {0,1}^length.
    BitVector bits(std::size_t length);

private:
    std::mt19937_64 engine_;
};

}  // namespace esr
