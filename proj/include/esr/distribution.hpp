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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "esr/bitvec.hpp"

namespace esr {

/// Joint distribution over one or more blocks. The key packs the
/// first listed block into the highest bits.
struct JointDistribution {
    std::vector<std::string> blocks;
    std::vector<unsigned> widths;
    std::vector<double> probabilities;

    std::vector<BitVector> decode(std::uint64_t key) const;
    std::uint64_t encode(std::span<const BitVector> values) const;
    double total() const;
};

}  // namespace esr
