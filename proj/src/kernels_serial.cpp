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

#include <algorithm>
#include <bit>
#include <cmath>

#include "esr/kernels.hpp"

namespace esr::kernels {

unsigned key_width(std::span<const BitField> fields) noexcept {
    unsigned width = 0;
    for (const auto &f : fields) {
        width = std::max(width, f.shift + f.width);
    }
    return width;
}

namespace serial {

void hadamard(std::span<Amplitude> amps, unsigned qubit) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, qubit);
        std::uint64_t i1 = i0 | bit;
        Amplitude a0 = amps[i0];
        Amplitude a1 = amps[i1];
        amps[i0] = (a0 + a1) * inv_sqrt2;
        amps[i1] = (a0 - a1) * inv_sqrt2;
    }
}

void pauli_x(std::span<Amplitude> amps, unsigned qubit) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, qubit);
        std::swap(amps[i0], amps[i0 | bit]);
    }
}

void cnot(std::span<Amplitude> amps, unsigned control, unsigned target) {
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, target);
        if (i0 & cbit) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

void parity_phase(std::span<Amplitude> amps, std::uint64_t mask) {
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if (std::popcount(k & mask) & 1) {
            amps[k] = -amps[k];
        }
    }
}

void parity_flip(std::span<Amplitude> amps, unsigned target, std::uint64_t mask) {
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, target);
        if (std::popcount(i0 & mask) & 1) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

double norm_squared(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> marginal(std::span<const Amplitude> amps, std::span<const BitField> fields) {
    std::vector<double> table(std::size_t{1} << key_width(fields), 0.0);
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        table[extract_key(k, fields)] += std::norm(amps[k]);
    }
    return table;
}

void project(std::span<Amplitude> amps, unsigned offset, unsigned width, std::uint64_t value, double scale) {
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if (((k >> offset) & mask) == value) {
            amps[k] *= scale;
        } else {
            amps[k] = 0.0;
        }
    }
}

Reduced1Q reduced_density(std::span<const Amplitude> amps, unsigned qubit) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t half = amps.size() / 2;
    Reduced1Q r;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, qubit);
        const Amplitude &a0 = amps[i0];
        const Amplitude &a1 = amps[i0 | bit];
        r.p0 += std::norm(a0);
        r.p1 += std::norm(a1);
        r.coherence += a0 * std::conj(a1);
    }
    return r;
}

}  // namespace serial

}  // namespace esr::kernels
