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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace esr::kernels {

using Amplitude = std::complex<double>;

/// A run of `width` qubits starting at `offset`, copied into the marginal key
/// at bit position `shift`.
struct BitField {
    unsigned offset = 0;
    unsigned width = 0;
    unsigned shift = 0;
};

/// Single-qubit reduced density matrix entries.
struct Reduced1Q {
    double p0 = 0.0;
    double p1 = 0.0;
    Amplitude coherence{};  // <0|rho|1>
};

// Two implementations with identical contracts. `serial` is the reference the
// tests compare against; `omp` splits the amplitude loops across threads once
// the state is large enough to pay for it. Reductions in `omp` use a fixed
// chunk layout so results do not depend on the thread count.

namespace serial {

void hadamard(std::span<Amplitude> amps, unsigned qubit);
void pauli_x(std::span<Amplitude> amps, unsigned qubit);
void cnot(std::span<Amplitude> amps, unsigned control, unsigned target);
/// amps[k] *= (-1)^{popcount(k & mask)}
void parity_phase(std::span<Amplitude> amps, std::uint64_t mask);
/// |y>|x> -> |y xor parity(x & mask)>|x> with y the `target` qubit. `mask`
/// must not contain the target bit.
void parity_flip(std::span<Amplitude> amps, unsigned target, std::uint64_t mask);
double norm_squared(std::span<const Amplitude> amps);
std::vector<double> marginal(std::span<const Amplitude> amps, std::span<const BitField> fields);
/// Zeros every amplitude whose field differs from `value`, scales the rest.
void project(std::span<Amplitude> amps, unsigned offset, unsigned width, std::uint64_t value, double scale);
Reduced1Q reduced_density(std::span<const Amplitude> amps, unsigned qubit);

}  // namespace serial

namespace omp {

/// States smaller than this stay on one thread.
inline constexpr std::size_t kMinParallelAmplitudes = std::size_t{1} << 15;

void hadamard(std::span<Amplitude> amps, unsigned qubit);
void pauli_x(std::span<Amplitude> amps, unsigned qubit);
void cnot(std::span<Amplitude> amps, unsigned control, unsigned target);
void parity_phase(std::span<Amplitude> amps, std::uint64_t mask);
void parity_flip(std::span<Amplitude> amps, unsigned target, std::uint64_t mask);
double norm_squared(std::span<const Amplitude> amps);
std::vector<double> marginal(std::span<const Amplitude> amps, std::span<const BitField> fields);
void project(std::span<Amplitude> amps, unsigned offset, unsigned width, std::uint64_t value, double scale);
Reduced1Q reduced_density(std::span<const Amplitude> amps, unsigned qubit);

}  // namespace omp

/// Total width of the marginal key described by `fields`.
unsigned key_width(std::span<const BitField> fields) noexcept;

inline std::uint64_t extract_key(std::uint64_t index, std::span<const BitField> fields) noexcept {
    std::uint64_t key = 0;
    for (const auto &f : fields) {
        std::uint64_t mask = (std::uint64_t{1} << f.width) - 1;
        key |= ((index >> f.offset) & mask) << f.shift;
    }
    return key;
}

/// Index of the k-th basis state whose `qubit` bit is zero.
inline std::uint64_t insert_zero_bit(std::uint64_t k, unsigned qubit) noexcept {
    std::uint64_t low = k & ((std::uint64_t{1} << qubit) - 1);
    return ((k >> qubit) << (qubit + 1)) | low;
}

}  // namespace esr::kernels
