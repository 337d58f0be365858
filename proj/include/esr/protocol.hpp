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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esr/analytic.hpp"
#include "esr/bitvec.hpp"
#include "esr/rng.hpp"
#include "esr/statevector.hpp"

namespace esr {

enum class Backend { full, reduced, analytic };
enum class Variant { ghz3, epr };
enum class Party { alice, bob, charlie, everyone };

std::string_view to_string(Backend backend) noexcept;
std::string_view to_string(Variant variant) noexcept;
std::string_view to_string(Party party) noexcept;
/// Throw InvalidArgument on unknown names.
Backend parse_backend(std::string_view name);
Variant parse_variant(std::string_view name);

inline constexpr int kTranscriptFormatVersion = 1;

struct ExchangeConfig {
    BitVector i_b;
    BitVector i_c;
    Backend backend = Backend::analytic;
    Variant variant = Variant::ghz3;
    std::uint64_t master_seed = 0;
    bool redact_private = false;
    std::size_t qubit_cap = kDefaultQubitCap;

    std::size_t n() const noexcept {
        return i_b.size() + i_c.size();
    }

    /// Qubits the statevector backends allocate; 0 for the analytic backend.
    std::size_t qubits_required() const noexcept;

    /// InvalidN when both secrets are empty, QubitLimitExceeded when a
    /// statevector backend would exceed the cap.
    void validate() const;
};

struct LengthAnnouncement {
    std::size_t len_ib = 0;
    std::size_t len_ic = 0;
    friend bool operator==(const LengthAnnouncement &, const LengthAnnouncement &) = default;
};

/// Everything sent over the classical channels. The epr variant has no Alice,
/// so a_B and a_C are absent there.
struct PublicMessages {
    LengthAnnouncement lengths;
    std::optional<BitVector> a_b;  // Alice -> Charlie
    std::optional<BitVector> a_c;  // Alice -> Bob
    std::optional<BitVector> b_b;  // Bob -> Charlie
    std::optional<BitVector> c_c;  // Charlie -> Bob

    /// Payload bits across the four vectors (length announcements excluded).
    std::size_t payload_bits() const noexcept;
};

/// One recorded message on a classical channel.
struct Envelope {
    Party from = Party::alice;
    Party to = Party::everyone;
    std::string label;
    std::string payload;
};

/// In-process channel topology with a recording tap. Every message is public.
class ClassicalChannel {
public:
    void send(Party from, Party to, std::string label, std::string payload);
    const std::vector<Envelope> &log() const noexcept {
        return log_;
    }

private:
    std::vector<Envelope> log_;
};

struct SecretPair {
    BitVector i_b;
    BitVector i_c;
    friend bool operator==(const SecretPair &, const SecretPair &) = default;
};

/// Raw measurement results; `a` is empty in the epr variant.
struct PrivateOutcomes {
    BitVector a;
    BitVector b;
    BitVector c;
};

struct Transcript {
    int format_version = kTranscriptFormatVersion;
    Variant variant = Variant::ghz3;
    Backend backend = Backend::analytic;
    std::uint64_t seed = 0;
    std::uint64_t shot = 0;
    std::size_t len_ib = 0;
    std::size_t len_ic = 0;
    std::size_t n = 0;
    /// Config echo of the secrets; omitted when redacted.
    std::optional<SecretPair> secrets;
    PublicMessages messages;
    std::optional<PrivateOutcomes> outcomes;
    /// i_B as rebuilt by Charlie, i_C as rebuilt by Bob; omitted when redacted.
    std::optional<SecretPair> reconstructed;
    bool success = false;
    /// Channel log of this run. Not serialized.
    std::vector<Envelope> wire;
};

/// Steps the quantum part of the protocol phase by phase.
///
///   psi0  GHZ_3^{(x)n} (or |Phi+>^{(x)n}) with BOR = COR = |1>
///   psi1  H on BOR and COR
///   psi2  Bob's and Charlie's oracles with their auxiliary vectors
///   psi3  H^{(x)n} on every input register
///   psi4  measurement of AIR, BIR, CIR in that order
class EsrCircuit {
public:
    enum class Phase { psi0, psi1, psi2, psi3, psi4 };

    EsrCircuit(const BitVector &i_b, const BitVector &i_c, Variant variant, Fidelity fidelity,
               std::size_t cap = qubit_cap());

    Phase phase() const noexcept {
        return phase_;
    }
    const StateVector &state() const noexcept {
        return state_;
    }
    StateVector &state() noexcept {
        return state_;
    }

    /// Moves one phase forward, up to psi3.
    void advance();
    void run_to(Phase target);

    /// Measures the input registers (advancing to psi3 first if needed).
    PrivateOutcomes measure(Rng &rng);

private:
    BitVector aux_b_;
    BitVector aux_c_;
    Variant variant_;
    Fidelity fidelity_;
    StateVector state_;
    Phase phase_ = Phase::psi0;
};

/// Splits the registers and emits exactly a_C -> Bob, a_B -> Charlie,
/// b_B -> Charlie, c_C -> Bob.
PublicMessages classical_round(const BitVector &a, const BitVector &b, const BitVector &c, std::size_t len_b,
                               std::size_t len_c);

/// Two-party round: b_B -> Charlie, c_C -> Bob.
PublicMessages classical_round_epr(const BitVector &b, const BitVector &c, std::size_t len_b, std::size_t len_c);

/// Bob's reconstruction: a_C xor b_C xor c_C.
BitVector reconstruct_ic(const BitVector &a_c, const BitVector &b_c, const BitVector &c_c);

/// Charlie's reconstruction: a_B xor b_B xor c_B.
BitVector reconstruct_ib(const BitVector &a_b, const BitVector &b_b, const BitVector &c_b);

/// Runs one shot. Dispatches on config.variant; the shot index selects the
/// random stream derived from config.master_seed.
Transcript run_exchange(const ExchangeConfig &config, std::uint64_t shot = 0);

/// Two-party run over Bell pairs. Requires variant == epr.
Transcript run_exchange_epr(const ExchangeConfig &config, std::uint64_t shot = 0);

}  // namespace esr
