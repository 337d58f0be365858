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

namespace esr::kernels::omp {

namespace {

// Reductions are split into this many fixed chunks and combined in chunk
// order, so the rounding is the same for any thread count.
constexpr std::int64_t kReductionChunks = 64;

// Per-chunk marginal tables are only worth it for small keys.
constexpr unsigned kMaxChunkedKeyWidth = 12;

bool worth_parallel(std::size_t size) {
    return size >= kMinParallelAmplitudes;
}

}  // namespace

void hadamard(std::span<Amplitude> amps, unsigned qubit) {
    if (!worth_parallel(amps.size())) {
        serial::hadamard(amps, qubit);
        return;
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
        std::uint64_t i1 = i0 | bit;
        Amplitude a0 = amps[i0];
        Amplitude a1 = amps[i1];
        amps[i0] = (a0 + a1) * inv_sqrt2;
        amps[i1] = (a0 - a1) * inv_sqrt2;
    }
}

void pauli_x(std::span<Amplitude> amps, unsigned qubit) {
    if (!worth_parallel(amps.size())) {
        serial::pauli_x(amps, qubit);
        return;
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
        std::swap(amps[i0], amps[i0 | bit]);
    }
}

void cnot(std::span<Amplitude> amps, unsigned control, unsigned target) {
    if (!worth_parallel(amps.size())) {
        serial::cnot(amps, control, target);
        return;
    }
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), target);
        if (i0 & cbit) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

void parity_phase(std::span<Amplitude> amps, std::uint64_t mask) {
    if (!worth_parallel(amps.size())) {
        serial::parity_phase(amps, mask);
        return;
    }
    const auto size = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < size; ++k) {
        if (std::popcount(static_cast<std::uint64_t>(k) & mask) & 1) {
            amps[k] = -amps[k];
        }
    }
}

void parity_flip(std::span<Amplitude> amps, unsigned target, std::uint64_t mask) {
    if (!worth_parallel(amps.size())) {
        serial::parity_flip(amps, target, mask);
        return;
    }
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), target);
        if (std::popcount(i0 & mask) & 1) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

double norm_squared(std::span<const Amplitude> amps) {
    if (!worth_parallel(amps.size())) {
        return serial::norm_squared(amps);
    }
    const auto size = static_cast<std::int64_t>(amps.size());
    const std::int64_t chunk = (size + kReductionChunks - 1) / kReductionChunks;
    std::vector<double> partial(kReductionChunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < kReductionChunks; ++c) {
        double acc = 0.0;
        const std::int64_t end = std::min(size, (c + 1) * chunk);
        for (std::int64_t k = c * chunk; k < end; ++k) {
            acc += std::norm(amps[k]);
        }
        partial[c] = acc;
    }
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

std::vector<double> marginal(std::span<const Amplitude> amps, std::span<const BitField> fields) {
    const unsigned width = key_width(fields);
    if (!worth_parallel(amps.size()) || width > kMaxChunkedKeyWidth) {
        return serial::marginal(amps, fields);
    }
    const std::size_t table_size = std::size_t{1} << width;
    const auto size = static_cast<std::int64_t>(amps.size());
    const std::int64_t chunk = (size + kReductionChunks - 1) / kReductionChunks;
    std::vector<std::vector<double>> partial(kReductionChunks, std::vector<double>(table_size, 0.0));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < kReductionChunks; ++c) {
        auto &local = partial[c];
        const std::int64_t end = std::min(size, (c + 1) * chunk);
        for (std::int64_t k = c * chunk; k < end; ++k) {
            local[extract_key(static_cast<std::uint64_t>(k), fields)] += std::norm(amps[k]);
        }
    }
    std::vector<double> table(table_size, 0.0);
    for (const auto &local : partial) {
        for (std::size_t j = 0; j < table_size; ++j) {
            table[j] += local[j];
        }
    }
    return table;
}

void project(std::span<Amplitude> amps, unsigned offset, unsigned width, std::uint64_t value, double scale) {
    if (!worth_parallel(amps.size())) {
        serial::project(amps, offset, width, value, scale);
        return;
    }
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    const auto size = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < size; ++k) {
        if (((static_cast<std::uint64_t>(k) >> offset) & mask) == value) {
            amps[k] *= scale;
        } else {
            amps[k] = 0.0;
        }
    }
}

Reduced1Q reduced_density(std::span<const Amplitude> amps, unsigned qubit) {
    if (!worth_parallel(amps.size())) {
        return serial::reduced_density(amps, qubit);
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::int64_t chunk = (half + kReductionChunks - 1) / kReductionChunks;
    std::vector<Reduced1Q> partial(kReductionChunks);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < kReductionChunks; ++c) {
        Reduced1Q local;
        const std::int64_t end = std::min(half, (c + 1) * chunk);
        for (std::int64_t k = c * chunk; k < end; ++k) {
            std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
            const Amplitude &a0 = amps[i0];
            const Amplitude &a1 = amps[i0 | bit];
            local.p0 += std::norm(a0);
            local.p1 += std::norm(a1);
            local.coherence += a0 * std::conj(a1);
        }
        partial[c] = local;
    }
    Reduced1Q r;
    for (const auto &p : partial) {
        r.p0 += p.p0;
        r.p1 += p.p1;
        r.coherence += p.coherence;
    }
    return r;
}

}  // namespace esr::kernels::omp
