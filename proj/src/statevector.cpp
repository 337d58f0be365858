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

#include "esr/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

#include "esr/errors.hpp"

namespace esr {

namespace {

constexpr unsigned kHardQubitLimit = 40;
constexpr double kDegenerateNorm = 1e-9;

std::size_t checked_n(std::size_t n) {
    if (n == 0) {
        throw EsrError(ErrorCode::InvalidN, "n must be at least 1");
    }
    return n;
}

}  // namespace

std::size_t qubit_cap() {
    const char *env = std::getenv("ESR_QUBIT_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefaultQubitCap;
    }
    char *end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0) {
        throw EsrError(ErrorCode::InvalidArgument,
                       "ESR_QUBIT_CAP must be a positive integer, got '" + std::string(env) + "'");
    }
    return static_cast<std::size_t>(std::min<unsigned long long>(value, kHardQubitLimit));
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout RegisterLayout::from_blocks(const std::vector<std::pair<std::string, unsigned>> &blocks) {
    RegisterLayout layout;
    std::set<std::string, std::less<>> seen;
    for (const auto &[name, width] : blocks) {
        if (width == 0) {
            throw EsrError(ErrorCode::InvalidArgument, "block '" + name + "' has zero width");
        }
        if (!seen.insert(name).second) {
            throw EsrError(ErrorCode::InvalidArgument, "duplicate block '" + name + "'");
        }
        layout.blocks_.push_back(Block{name, width, layout.total_});
        layout.total_ += width;
    }
    return layout;
}

RegisterLayout RegisterLayout::ghz3(std::size_t n, Fidelity fidelity) {
    auto w = static_cast<unsigned>(checked_n(n));
    if (fidelity == Fidelity::full) {
        return from_blocks({{std::string(reg::kCharlieInput), w},
                            {std::string(reg::kCharlieOutput), 1},
                            {std::string(reg::kBobInput), w},
                            {std::string(reg::kBobOutput), 1},
                            {std::string(reg::kAliceInput), w}});
    }
    return from_blocks({{std::string(reg::kCharlieInput), w},
                        {std::string(reg::kBobInput), w},
                        {std::string(reg::kAliceInput), w}});
}

RegisterLayout RegisterLayout::epr(std::size_t n, Fidelity fidelity) {
    auto w = static_cast<unsigned>(checked_n(n));
    if (fidelity == Fidelity::full) {
        return from_blocks({{std::string(reg::kCharlieInput), w},
                            {std::string(reg::kCharlieOutput), 1},
                            {std::string(reg::kBobInput), w},
                            {std::string(reg::kBobOutput), 1}});
    }
    return from_blocks({{std::string(reg::kCharlieInput), w}, {std::string(reg::kBobInput), w}});
}

const Block &RegisterLayout::block(std::string_view name) const {
    for (const auto &b : blocks_) {
        if (b.name == name) {
            return b;
        }
    }
    throw EsrError(ErrorCode::UnknownBlock, "unknown block '" + std::string(name) + "'");
}

bool RegisterLayout::has_block(std::string_view name) const noexcept {
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const Block &b) { return b.name == name; });
}

std::uint64_t RegisterLayout::compose(const std::map<std::string, BitVector, std::less<>> &contents) const {
    std::uint64_t index = 0;
    for (const auto &[name, value] : contents) {
        const Block &b = block(name);
        if (value.size() != b.width) {
            throw EsrError(ErrorCode::LengthMismatch,
                           "block '" + name + "' has width " + std::to_string(b.width) + ", got " +
                               std::to_string(value.size()) + " bits");
        }
        index |= value.to_uint() << b.offset;
    }
    return index;
}

BitVector RegisterLayout::extract(std::uint64_t index, std::string_view name) const {
    const Block &b = block(name);
    std::uint64_t mask = (std::uint64_t{1} << b.width) - 1;
    return BitVector::from_uint((index >> b.offset) & mask, b.width);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterLayout layout, std::size_t cap) : layout_(std::move(layout)) {
    const unsigned q = layout_.total_qubits();
    if (q > cap || q > kHardQubitLimit) {
        throw EsrError(ErrorCode::QubitLimitExceeded, "state needs " + std::to_string(q) +
                                                          " qubits but the cap is " + std::to_string(cap));
    }
    amps_.assign(std::size_t{1} << q, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(RegisterLayout layout, std::uint64_t index, std::size_t cap) {
    StateVector s(std::move(layout), cap);
    if (index >= s.amps_.size()) {
        throw EsrError(ErrorCode::IndexOutOfRange, "basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    return policy_ == KernelPolicy::serial ? kernels::serial::norm_squared(amps_) : kernels::omp::norm_squared(amps_);
}

void StateVector::require_qubit(unsigned qubit) const {
    if (qubit >= layout_.total_qubits()) {
        throw EsrError(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " out of range for " +
                                                       std::to_string(layout_.total_qubits()) + " qubits");
    }
}

void StateVector::apply_hadamard(unsigned qubit) {
    require_qubit(qubit);
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::hadamard(amps_, qubit);
    } else {
        kernels::omp::hadamard(amps_, qubit);
    }
}

void StateVector::apply_hadamard_block(std::string_view name) {
    const Block &b = layout_.block(name);
    for (unsigned q = b.offset; q < b.offset + b.width; ++q) {
        apply_hadamard(q);
    }
}

void StateVector::apply_x(unsigned qubit) {
    require_qubit(qubit);
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::pauli_x(amps_, qubit);
    } else {
        kernels::omp::pauli_x(amps_, qubit);
    }
}

void StateVector::apply_cnot(unsigned control, unsigned target) {
    require_qubit(control);
    require_qubit(target);
    if (control == target) {
        throw EsrError(ErrorCode::InvalidArgument, "cnot control and target coincide");
    }
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::cnot(amps_, control, target);
    } else {
        kernels::omp::cnot(amps_, control, target);
    }
}

void StateVector::apply_phase_oracle(std::string_view name, const BitVector &i_tilde) {
    const Block &b = layout_.block(name);
    if (i_tilde.size() != b.width) {
        throw EsrError(ErrorCode::LengthMismatch, "phase oracle vector has " + std::to_string(i_tilde.size()) +
                                                      " bits, block '" + b.name + "' has " +
                                                      std::to_string(b.width));
    }
    const std::uint64_t mask = i_tilde.to_uint() << b.offset;
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::parity_phase(amps_, mask);
    } else {
        kernels::omp::parity_phase(amps_, mask);
    }
}

void StateVector::apply_oracle(std::string_view input, std::string_view output, const BitVector &i_tilde) {
    const Block &in = layout_.block(input);
    const Block &out = layout_.block(output);
    if (out.width != 1) {
        throw EsrError(ErrorCode::InvalidArgument, "oracle output block '" + out.name + "' must have width 1");
    }
    if (i_tilde.size() != in.width) {
        throw EsrError(ErrorCode::LengthMismatch, "oracle vector has " + std::to_string(i_tilde.size()) +
                                                      " bits, block '" + in.name + "' has " +
                                                      std::to_string(in.width));
    }
    const std::uint64_t mask = i_tilde.to_uint() << in.offset;
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::parity_flip(amps_, out.offset, mask);
    } else {
        kernels::omp::parity_flip(amps_, out.offset, mask);
    }
}

JointDistribution StateVector::block_marginal(std::string_view name) const {
    std::string single(name);
    return block_marginal(std::span<const std::string>(&single, 1));
}

JointDistribution StateVector::block_marginal(std::span<const std::string> names) const {
    JointDistribution dist;
    unsigned total_width = 0;
    std::set<std::string, std::less<>> seen;
    for (const auto &name : names) {
        const Block &b = layout_.block(name);
        if (!seen.insert(b.name).second) {
            throw EsrError(ErrorCode::InvalidArgument, "block '" + b.name + "' listed twice");
        }
        dist.blocks.push_back(b.name);
        dist.widths.push_back(b.width);
        total_width += b.width;
    }
    if (total_width > kMaxMarginalBits) {
        throw EsrError(ErrorCode::TableTooLarge, "marginal over " + std::to_string(total_width) +
                                                     " qubits exceeds the " + std::to_string(kMaxMarginalBits) +
                                                     "-qubit table limit");
    }
    std::vector<kernels::BitField> fields;
    unsigned shift = total_width;
    for (const auto &name : dist.blocks) {
        const Block &b = layout_.block(name);
        shift -= b.width;
        fields.push_back(kernels::BitField{b.offset, b.width, shift});
    }
    dist.probabilities = policy_ == KernelPolicy::serial ? kernels::serial::marginal(amps_, fields)
                                                         : kernels::omp::marginal(amps_, fields);
    return dist;
}

BitVector StateVector::measure_block(std::string_view name, Rng &rng) {
    const Block &b = layout_.block(name);
    JointDistribution dist = block_marginal(name);
    const double total = dist.total();
    if (total < kDegenerateNorm) {
        throw EsrError(ErrorCode::DegenerateState, "cannot measure a state with norm " + std::to_string(total));
    }
    const double u = rng.uniform01() * total;
    std::uint64_t outcome = 0;
    std::uint64_t last_nonzero = 0;
    double cumulative = 0.0;
    bool found = false;
    for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k) {
        const double p = dist.probabilities[k];
        if (p <= 0.0) {
            continue;
        }
        last_nonzero = k;
        cumulative += p;
        if (u < cumulative) {
            outcome = k;
            found = true;
            break;
        }
    }
    if (!found) {
        outcome = last_nonzero;
    }
    const BitVector value = BitVector::from_uint(outcome, b.width);
    project_onto(b, outcome, dist.probabilities[outcome]);
    return value;
}

double StateVector::postselect(std::string_view name, const BitVector &value) {
    const Block &b = layout_.block(name);
    if (value.size() != b.width) {
        throw EsrError(ErrorCode::LengthMismatch, "postselect value has " + std::to_string(value.size()) +
                                                      " bits, block '" + b.name + "' has " +
                                                      std::to_string(b.width));
    }
    const double p = block_marginal(name).probabilities[value.to_uint()];
    if (p < kDegenerateNorm) {
        throw EsrError(ErrorCode::DegenerateState,
                       "outcome " + value.to_string() + " of block '" + b.name + "' has zero probability");
    }
    project_onto(b, value.to_uint(), p);
    return p;
}

void StateVector::project_onto(const Block &b, std::uint64_t value, double probability) {
    const double scale = 1.0 / std::sqrt(probability);
    if (policy_ == KernelPolicy::serial) {
        kernels::serial::project(amps_, b.offset, b.width, value, scale);
    } else {
        kernels::omp::project(amps_, b.offset, b.width, value, scale);
    }
}

double StateVector::output_register_fidelity(std::string_view name) const {
    const Block &b = layout_.block(name);
    if (b.width != 1) {
        throw EsrError(ErrorCode::InvalidArgument, "block '" + b.name + "' is not a single-qubit register");
    }
    const auto r = policy_ == KernelPolicy::serial ? kernels::serial::reduced_density(amps_, b.offset)
                                                   : kernels::omp::reduced_density(amps_, b.offset);
    const double fidelity = 0.5 * (r.p0 + r.p1) - r.coherence.real();
    return std::clamp(fidelity, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Preparation

StateVector StateVector::from_support(RegisterLayout layout, std::span<const std::uint64_t> indices,
                                      Amplitude value, std::size_t cap) {
    StateVector s(std::move(layout), cap);
    s.amps_[0] = 0.0;
    for (std::uint64_t index : indices) {
        if (index >= s.amps_.size()) {
            throw EsrError(ErrorCode::IndexOutOfRange, "support index out of range");
        }
        s.amps_[index] = value;
    }
    return s;
}

namespace {

std::uint64_t output_bits(const RegisterLayout &layout, Fidelity fidelity) {
    if (fidelity != Fidelity::full) {
        return 0;
    }
    return (std::uint64_t{1} << layout.block(reg::kBobOutput).offset) |
           (std::uint64_t{1} << layout.block(reg::kCharlieOutput).offset);
}

void set_outputs_with_gates(StateVector &state, Fidelity fidelity) {
    if (fidelity == Fidelity::full) {
        state.apply_x(state.layout().block(reg::kBobOutput).offset);
        state.apply_x(state.layout().block(reg::kCharlieOutput).offset);
    }
}

}  // namespace

StateVector prepare_ghz3n(std::size_t n, Fidelity fidelity, std::size_t cap) {
    RegisterLayout layout = RegisterLayout::ghz3(n, fidelity);
    if (layout.total_qubits() > cap) {
        throw EsrError(ErrorCode::QubitLimitExceeded, "GHZ state with n=" + std::to_string(n) + " needs " +
                                                          std::to_string(layout.total_qubits()) +
                                                          " qubits but the cap is " + std::to_string(cap));
    }
    const unsigned a = layout.block(reg::kAliceInput).offset;
    const unsigned b = layout.block(reg::kBobInput).offset;
    const unsigned c = layout.block(reg::kCharlieInput).offset;
    const std::uint64_t outputs = output_bits(layout, fidelity);
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<std::uint64_t> support(count);
    for (std::uint64_t x = 0; x < count; ++x) {
        support[x] = (x << a) | (x << b) | (x << c) | outputs;
    }
    return StateVector::from_support(std::move(layout), support, 1.0 / std::sqrt(static_cast<double>(count)), cap);
}

StateVector prepare_ghz3n_gates(std::size_t n, Fidelity fidelity, std::size_t cap) {
    StateVector state(RegisterLayout::ghz3(n, fidelity), cap);
    const unsigned a = state.layout().block(reg::kAliceInput).offset;
    const unsigned b = state.layout().block(reg::kBobInput).offset;
    const unsigned c = state.layout().block(reg::kCharlieInput).offset;
    for (unsigned j = 0; j < n; ++j) {
        state.apply_hadamard(a + j);
        state.apply_cnot(a + j, b + j);
        state.apply_cnot(b + j, c + j);
    }
    set_outputs_with_gates(state, fidelity);
    return state;
}

StateVector prepare_bell_pairs(std::size_t n, Fidelity fidelity, std::size_t cap) {
    RegisterLayout layout = RegisterLayout::epr(n, fidelity);
    if (layout.total_qubits() > cap) {
        throw EsrError(ErrorCode::QubitLimitExceeded, "Bell pairs with n=" + std::to_string(n) + " need " +
                                                          std::to_string(layout.total_qubits()) +
                                                          " qubits but the cap is " + std::to_string(cap));
    }
    const unsigned b = layout.block(reg::kBobInput).offset;
    const unsigned c = layout.block(reg::kCharlieInput).offset;
    const std::uint64_t outputs = output_bits(layout, fidelity);
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<std::uint64_t> support(count);
    for (std::uint64_t x = 0; x < count; ++x) {
        support[x] = (x << b) | (x << c) | outputs;
    }
    return StateVector::from_support(std::move(layout), support, 1.0 / std::sqrt(static_cast<double>(count)), cap);
}

StateVector prepare_bell_pairs_gates(std::size_t n, Fidelity fidelity, std::size_t cap) {
    StateVector state(RegisterLayout::epr(n, fidelity), cap);
    const unsigned b = state.layout().block(reg::kBobInput).offset;
    const unsigned c = state.layout().block(reg::kCharlieInput).offset;
    for (unsigned j = 0; j < n; ++j) {
        state.apply_hadamard(b + j);
        state.apply_cnot(b + j, c + j);
    }
    set_outputs_with_gates(state, fidelity);
    return state;
}

}  // namespace esr
