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
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esr/bitvec.hpp"
#include "esr/distribution.hpp"
#include "esr/kernels.hpp"
#include "esr/rng.hpp"

namespace esr {

using kernels::Amplitude;

/// Register names used by the protocol circuits.
namespace reg {
inline constexpr std::string_view kAliceInput = "AIR";
inline constexpr std::string_view kBobOutput = "BOR";
inline constexpr std::string_view kBobInput = "BIR";
inline constexpr std::string_view kCharlieOutput = "COR";
inline constexpr std::string_view kCharlieInput = "CIR";
}  // namespace reg

/// `full` keeps the two output qubits and runs the oracles as genuine
/// U_f : |y>|x> -> |y xor f(x)>|x>. `reduced` drops them and applies the
/// kicked-back phase (-1)^{f(x)} directly.
enum class Fidelity { full, reduced };

enum class KernelPolicy { serial, parallel };

inline constexpr std::size_t kDefaultQubitCap = 26;

/// The qubit cap, taken from ESR_QUBIT_CAP when set to a positive integer.
std::size_t qubit_cap();

/// Largest marginal key (in bits) block_marginal will materialize.
inline constexpr unsigned kMaxMarginalBits = 24;

struct Block {
    std::string name;
    unsigned width = 0;
    unsigned offset = 0;  // global index of the block's least significant qubit
};

/// Named qubit blocks. Blocks are listed least significant first: the last
/// block holds the highest-order qubits of the global basis index.
class RegisterLayout {
public:
    RegisterLayout() = default;

    static RegisterLayout from_blocks(const std::vector<std::pair<std::string, unsigned>> &blocks);

    /// CIR(n), COR(1), BIR(n), BOR(1), AIR(n) for full; CIR, BIR, AIR for reduced.
    /// Basis index: ((((a*2 + bor)*2^n + b)*2 + cor)*2^n + c).
    static RegisterLayout ghz3(std::size_t n, Fidelity fidelity);

    /// CIR(n), COR(1), BIR(n), BOR(1) for full; CIR, BIR for reduced.
    static RegisterLayout epr(std::size_t n, Fidelity fidelity);

    const Block &block(std::string_view name) const;
    bool has_block(std::string_view name) const noexcept;
    const std::vector<Block> &blocks() const noexcept {
        return blocks_;
    }
    unsigned total_qubits() const noexcept {
        return total_;
    }

    /// Basis index with the given block contents; unlisted blocks are zero.
    std::uint64_t compose(const std::map<std::string, BitVector, std::less<>> &contents) const;

    /// Contents of `name` in basis state `index`.
    BitVector extract(std::uint64_t index, std::string_view name) const;

private:
    std::vector<Block> blocks_;
    unsigned total_ = 0;
};

class StateVector {
public:
    /// All qubits in |0>. Throws QubitLimitExceeded above `cap`.
    explicit StateVector(RegisterLayout layout, std::size_t cap = qubit_cap());

    /// Computational basis state |index>.
    static StateVector basis(RegisterLayout layout, std::uint64_t index, std::size_t cap = qubit_cap());

    /// `value` at each listed basis index, zero elsewhere. Normalization is the
    /// caller's responsibility.
    static StateVector from_support(RegisterLayout layout, std::span<const std::uint64_t> indices, Amplitude value,
                                    std::size_t cap = qubit_cap());

    const RegisterLayout &layout() const noexcept {
        return layout_;
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amps_;
    }
    Amplitude amplitude(std::uint64_t index) const {
        return amps_.at(index);
    }
    std::size_t size() const noexcept {
        return amps_.size();
    }

    KernelPolicy policy() const noexcept {
        return policy_;
    }
    void set_policy(KernelPolicy policy) noexcept {
        policy_ = policy;
    }

    double norm_squared() const;

    void apply_hadamard(unsigned qubit);
    void apply_hadamard_block(std::string_view block);
    void apply_x(unsigned qubit);
    void apply_cnot(unsigned control, unsigned target);

    /// Multiplies each component by (-1)^{i_tilde . x}, x the content of `block`.
    void apply_phase_oracle(std::string_view block, const BitVector &i_tilde);

    /// U_f with f(x) = i_tilde . x: flips the width-1 `output` block wherever
    /// f of the `input` block content is 1.
    void apply_oracle(std::string_view input, std::string_view output, const BitVector &i_tilde);

    /// Born-rule measurement of `block`; collapses and renormalizes the state.
    BitVector measure_block(std::string_view block, Rng &rng);

    /// Projects `block` onto |value> and renormalizes. Returns the Born
    /// probability of that outcome; DegenerateState if it is (numerically) zero.
    double postselect(std::string_view block, const BitVector &value);

    JointDistribution block_marginal(std::string_view block) const;
    JointDistribution block_marginal(std::span<const std::string> blocks) const;

    /// <-|rho|-> for the reduced state of a width-1 block.
    double output_register_fidelity(std::string_view block) const;

private:
    void require_qubit(unsigned qubit) const;
    void project_onto(const Block &block, std::uint64_t value, double probability);

    RegisterLayout layout_;
    std::vector<Amplitude> amps_;
    KernelPolicy policy_ = KernelPolicy::parallel;
};

/// GHZ_3^{(x)n} on AIR/BIR/CIR by writing the 2^n support amplitudes; in full
/// fidelity BOR = COR = |1>.
StateVector prepare_ghz3n(std::size_t n, Fidelity fidelity, std::size_t cap = qubit_cap());

/// Same state built from gates: per triplet, H on Alice's qubit and a CNOT
/// chain A -> B -> C; X on the output qubits.
StateVector prepare_ghz3n_gates(std::size_t n, Fidelity fidelity, std::size_t cap = qubit_cap());

/// |Phi+>^{(x)n} on BIR/CIR; in full fidelity BOR = COR = |1>.
StateVector prepare_bell_pairs(std::size_t n, Fidelity fidelity, std::size_t cap = qubit_cap());

StateVector prepare_bell_pairs_gates(std::size_t n, Fidelity fidelity, std::size_t cap = qubit_cap());

}  // namespace esr
