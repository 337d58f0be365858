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

#include "esr/bitvec.hpp"
#include "esr/distribution.hpp"
#include "esr/rng.hpp"

namespace esr {

/// Measured contents of Alice's, Bob's and Charlie's input registers.
struct OutcomeTriple {
    BitVector a;
    BitVector b;
    BitVector c;
};

/// Two-party variant: Bob's and Charlie's measured registers.
struct OutcomePair {
    BitVector b;
    BitVector c;
};

/// Largest n for which exact_distribution builds its 2^{3n}-entry table.
inline constexpr std::size_t kMaxExactN = 6;

/// Draws (a, b) uniformly and sets c = i xor a xor b, which is exactly the
/// Born distribution of the pre-measurement state: uniform over the 2^{2n}
/// triples with a xor b xor c = i.
OutcomeTriple sample_outcome(const BitVector &i, Rng &rng);

/// b uniform, c = i xor b.
OutcomePair sample_outcome_epr(const BitVector &i, Rng &rng);

/// Table over (a, b, c) keyed like a joint marginal over AIR, BIR, CIR.
JointDistribution exact_distribution(const BitVector &i);

/// Table over (b, c) keyed like a joint marginal over BIR, CIR.
JointDistribution exact_distribution_epr(const BitVector &i);

}  // namespace esr
