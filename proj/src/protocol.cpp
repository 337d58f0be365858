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

#include "esr/protocol.hpp"

#include <numeric>

#include "esr/errors.hpp"

namespace esr {

std::string_view to_string(Backend backend) noexcept {
    switch (backend) {
        case Backend::full:
            return "full";
        case Backend::reduced:
            return "reduced";
        case Backend::analytic:
            return "analytic";
    }
    return "?";
}

std::string_view to_string(Variant variant) noexcept {
    return variant == Variant::ghz3 ? "ghz3" : "epr";
}

std::string_view to_string(Party party) noexcept {
    switch (party) {
        case Party::alice:
            return "alice";
        case Party::bob:
            return "bob";
        case Party::charlie:
            return "charlie";
        case Party::everyone:
            return "everyone";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    for (Backend b : {Backend::full, Backend::reduced, Backend::analytic}) {
        if (to_string(b) == name) {
            return b;
        }
    }
    throw EsrError(ErrorCode::InvalidArgument,
                   "unknown backend '" + std::string(name) + "' (expected full, reduced or analytic)");
}

Variant parse_variant(std::string_view name) {
    if (name == "ghz3") {
        return Variant::ghz3;
    }
    if (name == "epr") {
        return Variant::epr;
    }
    throw EsrError(ErrorCode::InvalidArgument, "unknown variant '" + std::string(name) + "' (expected ghz3 or epr)");
}

// ---------------------------------------------------------------------------

std::size_t ExchangeConfig::qubits_required() const noexcept {
    if (backend == Backend::analytic) {
        return 0;
    }
    const std::size_t registers = variant == Variant::ghz3 ? 3 : 2;
    const std::size_t outputs = backend == Backend::full ? 2 : 0;
    return registers * n() + outputs;
}

void ExchangeConfig::validate() const {
    if (n() == 0) {
        throw EsrError(ErrorCode::InvalidN, "at least one secret must be non-empty");
    }
    if (qubits_required() > qubit_cap) {
        throw EsrError(ErrorCode::QubitLimitExceeded,
                       "backend " + std::string(to_string(backend)) + " needs " + std::to_string(qubits_required()) +
                           " qubits for n=" + std::to_string(n()) + " but the cap is " + std::to_string(qubit_cap));
    }
}

std::size_t PublicMessages::payload_bits() const noexcept {
    std::size_t total = 0;
    for (const auto *v : {&a_b, &a_c, &b_b, &c_c}) {
        if (v->has_value()) {
            total += (*v)->size();
        }
    }
    return total;
}

void ClassicalChannel::send(Party from, Party to, std::string label, std::string payload) {
    log_.push_back(Envelope{from, to, std::move(label), std::move(payload)});
}

// ---------------------------------------------------------------------------
// Quantum part

EsrCircuit::EsrCircuit(const BitVector &i_b, const BitVector &i_c, Variant variant, Fidelity fidelity,
                       std::size_t cap)
    : aux_b_(make_aux_b(i_b, i_c.size())),
      aux_c_(make_aux_c(i_c, i_b.size())),
      variant_(variant),
      fidelity_(fidelity),
      state_(variant == Variant::ghz3 ? prepare_ghz3n(i_b.size() + i_c.size(), fidelity, cap)
                                      : prepare_bell_pairs(i_b.size() + i_c.size(), fidelity, cap)) {
}

void EsrCircuit::advance() {
    switch (phase_) {
        case Phase::psi0:
            if (fidelity_ == Fidelity::full) {
                state_.apply_hadamard_block(reg::kBobOutput);
                state_.apply_hadamard_block(reg::kCharlieOutput);
            }
            phase_ = Phase::psi1;
            break;
        case Phase::psi1:
            if (fidelity_ == Fidelity::full) {
                state_.apply_oracle(reg::kBobInput, reg::kBobOutput, aux_b_);
                state_.apply_oracle(reg::kCharlieInput, reg::kCharlieOutput, aux_c_);
            } else {
                state_.apply_phase_oracle(reg::kBobInput, aux_b_);
                state_.apply_phase_oracle(reg::kCharlieInput, aux_c_);
            }
            phase_ = Phase::psi2;
            break;
        case Phase::psi2:
            if (variant_ == Variant::ghz3) {
                state_.apply_hadamard_block(reg::kAliceInput);
            }
            state_.apply_hadamard_block(reg::kBobInput);
            state_.apply_hadamard_block(reg::kCharlieInput);
            phase_ = Phase::psi3;
            break;
        case Phase::psi3:
        case Phase::psi4:
            throw EsrError(ErrorCode::InvalidArgument, "advance: the next phase is a measurement");
    }
}

void EsrCircuit::run_to(Phase target) {
    if (target == Phase::psi4) {
        throw EsrError(ErrorCode::InvalidArgument, "run_to: use measure() to reach psi4");
    }
    while (phase_ < target) {
        advance();
    }
}

PrivateOutcomes EsrCircuit::measure(Rng &rng) {
    if (phase_ == Phase::psi4) {
        throw EsrError(ErrorCode::InvalidArgument, "registers were already measured");
    }
    run_to(Phase::psi3);
    PrivateOutcomes out;
    if (variant_ == Variant::ghz3) {
        out.a = state_.measure_block(reg::kAliceInput, rng);
    }
    out.b = state_.measure_block(reg::kBobInput, rng);
    out.c = state_.measure_block(reg::kCharlieInput, rng);
    phase_ = Phase::psi4;
    return out;
}

// ---------------------------------------------------------------------------
// Classical part

namespace {

void require_register_length(const BitVector &r, std::size_t n, const char *name) {
    if (r.size() != n) {
        throw EsrError(ErrorCode::LengthMismatch, std::string("register ") + name + " has " +
                                                      std::to_string(r.size()) + " bits, expected " +
                                                      std::to_string(n));
    }
}

Fidelity fidelity_of(Backend backend) {
    return backend == Backend::full ? Fidelity::full : Fidelity::reduced;
}

}  // namespace

PublicMessages classical_round(const BitVector &a, const BitVector &b, const BitVector &c, std::size_t len_b,
                               std::size_t len_c) {
    const std::size_t n = len_b + len_c;
    require_register_length(a, n, "a");
    require_register_length(b, n, "b");
    require_register_length(c, n, "c");
    PublicMessages m;
    m.lengths = {len_b, len_c};
    auto [a_b, a_c] = split_at(a, len_b);
    m.a_b = std::move(a_b);
    m.a_c = std::move(a_c);
    m.b_b = split_at(b, len_b).first;
    m.c_c = split_at(c, len_b).second;
    return m;
}

PublicMessages classical_round_epr(const BitVector &b, const BitVector &c, std::size_t len_b, std::size_t len_c) {
    const std::size_t n = len_b + len_c;
    require_register_length(b, n, "b");
    require_register_length(c, n, "c");
    PublicMessages m;
    m.lengths = {len_b, len_c};
    m.b_b = split_at(b, len_b).first;
    m.c_c = split_at(c, len_b).second;
    return m;
}

BitVector reconstruct_ic(const BitVector &a_c, const BitVector &b_c, const BitVector &c_c) {
    return bit_xor(a_c, bit_xor(b_c, c_c));
}

BitVector reconstruct_ib(const BitVector &a_b, const BitVector &b_b, const BitVector &c_b) {
    return bit_xor(a_b, bit_xor(b_b, c_b));
}

namespace {

Transcript start_transcript(const ExchangeConfig &config, std::uint64_t shot, ClassicalChannel &channel) {
    config.validate();
    Transcript t;
    t.variant = config.variant;
    t.backend = config.backend;
    t.seed = config.master_seed;
    t.shot = shot;
    t.len_ib = config.i_b.size();
    t.len_ic = config.i_c.size();
    t.n = config.n();
    t.secrets = SecretPair{config.i_b, config.i_c};
    channel.send(Party::bob, Party::everyone, "len_ib", std::to_string(t.len_ib));
    channel.send(Party::charlie, Party::everyone, "len_ic", std::to_string(t.len_ic));
    return t;
}

void finish_transcript(Transcript &t, const ExchangeConfig &config, ClassicalChannel &channel) {
    t.success = t.reconstructed.has_value() && *t.reconstructed == SecretPair{config.i_b, config.i_c};
    t.wire = channel.log();
    if (config.redact_private) {
        t.secrets.reset();
        t.outcomes.reset();
        t.reconstructed.reset();
    }
}

}  // namespace

Transcript run_exchange(const ExchangeConfig &config, std::uint64_t shot) {
    if (config.variant == Variant::epr) {
        return run_exchange_epr(config, shot);
    }
    ClassicalChannel channel;
    Transcript t = start_transcript(config, shot, channel);
    Rng rng = Rng::for_shot(config.master_seed, shot);

    PrivateOutcomes out;
    if (config.backend == Backend::analytic) {
        OutcomeTriple triple = sample_outcome(concat(config.i_b, config.i_c), rng);
        out = {std::move(triple.a), std::move(triple.b), std::move(triple.c)};
    } else {
        EsrCircuit circuit(config.i_b, config.i_c, Variant::ghz3, fidelity_of(config.backend), config.qubit_cap);
        out = circuit.measure(rng);
    }

    t.messages = classical_round(out.a, out.b, out.c, t.len_ib, t.len_ic);
    channel.send(Party::alice, Party::bob, "a_C", t.messages.a_c->to_string());
    channel.send(Party::alice, Party::charlie, "a_B", t.messages.a_b->to_string());
    channel.send(Party::bob, Party::charlie, "b_B", t.messages.b_b->to_string());
    channel.send(Party::charlie, Party::bob, "c_C", t.messages.c_c->to_string());

    // Each broker combines the public halves with the half of their own
    // register that was never sent.
    const BitVector b_c = split_at(out.b, t.len_ib).second;
    const BitVector c_b = split_at(out.c, t.len_ib).first;
    t.reconstructed = SecretPair{reconstruct_ib(*t.messages.a_b, *t.messages.b_b, c_b),
                                 reconstruct_ic(*t.messages.a_c, b_c, *t.messages.c_c)};
    t.outcomes = std::move(out);
    finish_transcript(t, config, channel);
    return t;
}

Transcript run_exchange_epr(const ExchangeConfig &config, std::uint64_t shot) {
    if (config.variant != Variant::epr) {
        throw EsrError(ErrorCode::InvalidArgument, "run_exchange_epr requires the epr variant");
    }
    ClassicalChannel channel;
    Transcript t = start_transcript(config, shot, channel);
    Rng rng = Rng::for_shot(config.master_seed, shot);

    PrivateOutcomes out;
    if (config.backend == Backend::analytic) {
        OutcomePair pair = sample_outcome_epr(concat(config.i_b, config.i_c), rng);
        out.b = std::move(pair.b);
        out.c = std::move(pair.c);
    } else {
        EsrCircuit circuit(config.i_b, config.i_c, Variant::epr, fidelity_of(config.backend), config.qubit_cap);
        out = circuit.measure(rng);
    }

    t.messages = classical_round_epr(out.b, out.c, t.len_ib, t.len_ic);
    channel.send(Party::bob, Party::charlie, "b_B", t.messages.b_b->to_string());
    channel.send(Party::charlie, Party::bob, "c_C", t.messages.c_c->to_string());

    const BitVector b_c = split_at(out.b, t.len_ib).second;
    const BitVector c_b = split_at(out.c, t.len_ib).first;
    t.reconstructed = SecretPair{bit_xor(*t.messages.b_b, c_b), bit_xor(b_c, *t.messages.c_c)};
    t.outcomes = std::move(out);
    finish_transcript(t, config, channel);
    return t;
}

}  // namespace esr
