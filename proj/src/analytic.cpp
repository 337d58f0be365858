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

#include "esr/analytic.hpp"

#include <cmath>
#include <string>

#include "esr/errors.hpp"
#include "esr/statevector.hpp"

namespace esr {

namespace {

void require_nonempty(const BitVector &i) {
    if (i.empty()) {
        throw EsrError(ErrorCode::InvalidN, "aggregated vector must have n >= 1");
    }
}

void require_table_size(const BitVector &i, std::size_t limit) {
    if (i.size() > limit) {
        throw EsrError(ErrorCode::TableTooLarge, "exact distribution supports n <= " + std::to_string(limit) +
                                                     ", got n=" + std::to_string(i.size()));
    }
}

}  // namespace

OutcomeTriple sample_outcome(const BitVector &i, Rng &rng) {
    require_nonempty(i);
    BitVector a = rng.bits(i.size());
    BitVector b = rng.bits(i.size());
    BitVector c = bit_xor(i, bit_xor(a, b));
    return {std::move(a), std::move(b), std::move(c)};
}

OutcomePair sample_outcome_epr(const BitVector &i, Rng &rng) {
    require_nonempty(i);
    BitVector b = rng.bits(i.size());
    BitVector c = bit_xor(i, b);
    return {std::move(b), std::move(c)};
}

JointDistribution exact_distribution(const BitVector &i) {
    require_nonempty(i);
    require_table_size(i, kMaxExactN);
    const auto n = static_cast<unsigned>(i.size());
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::uint64_t iv = i.to_uint();
    JointDistribution dist;
    dist.blocks = {std::string(reg::kAliceInput), std::string(reg::kBobInput), std::string(reg::kCharlieInput)};
    dist.widths = {n, n, n};
    dist.probabilities.assign(std::size_t{1} << (3 * n), 0.0);
    const double p = 1.0 / static_cast<double>(count * count);
    for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = 0; b < count; ++b) {
            std::uint64_t c = iv ^ a ^ b;
            dist.probabilities[(a << (2 * n)) | (b << n) | c] = p;
        }
    }
    return dist;
}

JointDistribution exact_distribution_epr(const BitVector &i) {
    require_nonempty(i);
    require_table_size(i, 2 * kMaxExactN);
    const auto n = static_cast<unsigned>(i.size());
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::uint64_t iv = i.to_uint();
    JointDistribution dist;
    dist.blocks = {std::string(reg::kBobInput), std::string(reg::kCharlieInput)};
    dist.widths = {n, n};
    dist.probabilities.assign(std::size_t{1} << (2 * n), 0.0);
    const double p = 1.0 / static_cast<double>(count);
    for (std::uint64_t b = 0; b < count; ++b) {
        dist.probabilities[(b << n) | (iv ^ b)] = p;
    }
    return dist;
}

}  // namespace esr
