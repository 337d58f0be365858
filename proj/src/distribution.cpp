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

#include "esr/distribution.hpp"

#include <numeric>

#include "esr/errors.hpp"

namespace esr {

std::vector<BitVector> JointDistribution::decode(std::uint64_t key) const {
    std::vector<BitVector> out(widths.size());
    unsigned shift = 0;
    for (std::size_t k = widths.size(); k-- > 0;) {
        std::uint64_t mask = (std::uint64_t{1} << widths[k]) - 1;
        out[k] = BitVector::from_uint((key >> shift) & mask, widths[k]);
        shift += widths[k];
    }
    return out;
}

std::uint64_t JointDistribution::encode(std::span<const BitVector> values) const {
    if (values.size() != widths.size()) {
        throw EsrError(ErrorCode::LengthMismatch, "encode: wrong number of components");
    }
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < widths.size(); ++k) {
        if (values[k].size() != widths[k]) {
            throw EsrError(ErrorCode::LengthMismatch, "encode: component width mismatch");
        }
        key = (key << widths[k]) | values[k].to_uint();
    }
    return key;
}

double JointDistribution::total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

}  // namespace esr
