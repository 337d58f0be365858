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

// Test-only reference computations. Nothing here calls into the simulator;
// every value is evaluated from the defining sums with plain integers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace esr::oracle {

inline int parity_of_and(std::uint64_t z, std::uint64_t x) {
    int p = 0;
    for (std::uint64_t v = z & x; v != 0; v >>= 1) {
        p ^= static_cast<int>(v & 1u);
    }
    return p;
}

inline double sign(int parity) {
    return parity ? -1.0 : 1.0;
}

/// Coefficient of |z> in H^{(x)n}|x>: (-1)^{z.x} / sqrt(2^n).
inline double hadamard_coefficient(unsigned n, std::uint64_t z, std::uint64_t x) {
    return sign(parity_of_and(z, x)) / std::sqrt(static_cast<double>(std::uint64_t{1} << n));
}

/// Amplitude of |a>_A|b>_B|c>_C in psi3 by direct evaluation of
///   2^{-n/2} sum_x (-1)^{i.x} H|x>_A H|x>_B H|x>_C
/// (output qubits factored out).
inline double psi3_amplitude(unsigned n, std::uint64_t i, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    const double dim = static_cast<double>(std::uint64_t{1} << n);
    double sum = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        sum += sign(parity_of_and(i, x)) * hadamard_coefficient(n, a, x) * hadamard_coefficient(n, b, x) *
               hadamard_coefficient(n, c, x);
    }
    return sum / std::sqrt(dim);
}

/// Amplitude of |b>_B|c>_C after the two-party circuit on |Phi+>^{(x)n}.
inline double epr_psi3_amplitude(unsigned n, std::uint64_t i, std::uint64_t b, std::uint64_t c) {
    const double dim = static_cast<double>(std::uint64_t{1} << n);
    double sum = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        sum += sign(parity_of_and(i, x)) * hadamard_coefficient(n, b, x) * hadamard_coefficient(n, c, x);
    }
    return sum / std::sqrt(dim);
}

/// Number of x in {0,1}^n with z.x = 0.
inline std::uint64_t count_orthogonal(unsigned n, std::uint64_t z) {
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        count += parity_of_and(z, x) == 0 ? 1 : 0;
    }
    return count;
}

}  // namespace esr::oracle
