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

#include "esr/rng.hpp"

#include <vector>

namespace esr {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Rng Rng::for_shot(std::uint64_t master_seed, std::uint64_t shot) {
    return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(shot ^ 0x5851f42d4c957f2dull)));
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

BitVector Rng::bits(std::size_t length) {
    std::vector<std::uint8_t> out(length);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 64 == 0) {
            word = engine_();
        }
        out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return BitVector::from_lsb_first(std::move(out));
}

}  // namespace esr
