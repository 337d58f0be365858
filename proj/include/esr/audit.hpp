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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "esr/protocol.hpp"

namespace esr {

enum class Role { alice, eavesdropper, bob, charlie };

/// Named pieces of data a party may hold after a run.
enum class Field { a, a_B, a_C, b, b_B, b_C, c, c_B, c_C, i_B, i_C, lengths };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Field field) noexcept;
Role parse_role(std::string_view name);
Field parse_field(std::string_view name);

/// A known field, or only some of its bits (positions count from the field's
/// least significant bit). Empty `positions` means the whole field.
struct Knowledge {
    Field field = Field::lengths;
    std::vector<std::size_t> positions;
};

/// Who knows what after the classical round.
///
///   eavesdropper  a_B, a_C, b_B, c_C, lengths
///   alice         eavesdropper + a
///   bob           eavesdropper + b + own secret i_B
///   charlie       eavesdropper + c + own secret i_C
class KnowledgeView {
public:
    static KnowledgeView for_role(Role role);

    KnowledgeView &add(Field field);
    KnowledgeView &add_bits(Field field, std::vector<std::size_t> positions);

    Role role() const noexcept {
        return role_;
    }
    const std::vector<Knowledge> &known() const noexcept {
        return known_;
    }
    bool knows(Field field) const noexcept;

private:
    explicit KnowledgeView(Role role) : role_(role) {
    }

    Role role_;
    std::vector<Knowledge> known_;
};

/// Exact posterior over candidate secrets (i_B, i_C), stored as integer counts
/// of consistent hidden configurations. counts[k] belongs to the candidate
/// whose concatenation i_B i_C packs to k.
struct PosteriorTable {
    std::size_t len_ib = 0;
    std::size_t len_ic = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::size_t candidates() const noexcept {
        return counts.size();
    }
    std::size_t support() const noexcept;
    /// Every candidate has the same nonzero count.
    bool is_uniform() const noexcept;
    std::uint64_t count(const SecretPair &candidate) const;
    SecretPair candidate(std::uint64_t key) const;

    /// Counts summed over the other secret.
    std::vector<std::uint64_t> marginal_ib() const;
    std::vector<std::uint64_t> marginal_ic() const;
};

/// True when all entries are equal and nonzero.
bool counts_uniform(const std::vector<std::uint64_t> &counts) noexcept;

inline constexpr std::size_t kMaxAuditN = 8;

/// Enumerates every (i', a', b') under a uniform prior, sets
/// c' = i' xor a' xor b' (c' = i' xor b' for epr, a' = 0), and counts the
/// configurations that agree with every bit in the view. Throws TableTooLarge
/// above kMaxAuditN and MalformedTranscript when the transcript lacks data
/// the view needs.
PosteriorTable posterior(const KnowledgeView &view, const Transcript &transcript);

/// Single-threaded reference for posterior().
PosteriorTable posterior_serial(const KnowledgeView &view, const Transcript &transcript);

enum class CheckStatus { pass, fail, not_evaluable };
std::string_view to_string(CheckStatus status) noexcept;

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool passed() const noexcept;
    const Check *find(std::string_view name) const noexcept;
};

/// Consistency checks a referee can run on a transcript: format version,
/// length announcement, message presence, length consistency, and (when the
/// private fields are present) the register splits, the correlation
/// a xor b xor c = i_B i_C, the reconstructions and the success flag.
VerificationReport verify_transcript(const Transcript &transcript);

nlohmann::json report_to_json(const VerificationReport &report);
nlohmann::json posterior_to_json(const KnowledgeView &view, const PosteriorTable &table);

}  // namespace esr
