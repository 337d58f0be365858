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

#include "esr/audit.hpp"

#include <algorithm>
#include <array>

#include "esr/errors.hpp"

namespace esr {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 4> kRoleNames{{
    {Role::alice, "alice"},
    {Role::eavesdropper, "eavesdropper"},
    {Role::bob, "bob"},
    {Role::charlie, "charlie"},
}};

constexpr std::array<std::pair<Field, std::string_view>, 12> kFieldNames{{
    {Field::a, "a"},
    {Field::a_B, "a_B"},
    {Field::a_C, "a_C"},
    {Field::b, "b"},
    {Field::b_B, "b_B"},
    {Field::b_C, "b_C"},
    {Field::c, "c"},
    {Field::c_B, "c_B"},
    {Field::c_C, "c_C"},
    {Field::i_B, "i_B"},
    {Field::i_C, "i_C"},
    {Field::lengths, "lengths"},
}};

[[noreturn]] void malformed(const std::string &what) {
    throw EsrError(ErrorCode::MalformedTranscript, what);
}

}  // namespace

std::string_view to_string(Role role) noexcept {
    for (const auto &[r, name] : kRoleNames) {
        if (r == role) {
            return name;
        }
    }
    return "?";
}

std::string_view to_string(Field field) noexcept {
    for (const auto &[f, name] : kFieldNames) {
        if (f == field) {
            return name;
        }
    }
    return "?";
}

Role parse_role(std::string_view name) {
    for (const auto &[r, n] : kRoleNames) {
        if (n == name) {
            return r;
        }
    }
    throw EsrError(ErrorCode::InvalidArgument,
                   "unknown view '" + std::string(name) + "' (expected alice, eavesdropper, bob or charlie)");
}

Field parse_field(std::string_view name) {
    for (const auto &[f, n] : kFieldNames) {
        if (n == name) {
            return f;
        }
    }
    throw EsrError(ErrorCode::InvalidArgument, "unknown field '" + std::string(name) + "'");
}

std::string_view to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::pass:
            return "pass";
        case CheckStatus::fail:
            return "fail";
        case CheckStatus::not_evaluable:
            return "not evaluable";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// KnowledgeView

KnowledgeView KnowledgeView::for_role(Role role) {
    KnowledgeView v(role);
    v.add(Field::lengths).add(Field::a_B).add(Field::a_C).add(Field::b_B).add(Field::c_C);
    switch (role) {
        case Role::alice:
            v.add(Field::a);
            break;
        case Role::bob:
            v.add(Field::b).add(Field::i_B);
            break;
        case Role::charlie:
            v.add(Field::c).add(Field::i_C);
            break;
        case Role::eavesdropper:
            break;
    }
    return v;
}

KnowledgeView &KnowledgeView::add(Field field) {
    known_.push_back(Knowledge{field, {}});
    return *this;
}

KnowledgeView &KnowledgeView::add_bits(Field field, std::vector<std::size_t> positions) {
    if (!positions.empty()) {
        known_.push_back(Knowledge{field, std::move(positions)});
    }
    return *this;
}

bool KnowledgeView::knows(Field field) const noexcept {
    return std::any_of(known_.begin(), known_.end(),
                       [&](const Knowledge &k) { return k.field == field && k.positions.empty(); });
}

// ---------------------------------------------------------------------------
// PosteriorTable

bool counts_uniform(const std::vector<std::uint64_t> &counts) noexcept {
    if (counts.empty() || counts.front() == 0) {
        return false;
    }
    return std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == counts.front(); });
}

std::size_t PosteriorTable::support() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; }));
}

bool PosteriorTable::is_uniform() const noexcept {
    return counts_uniform(counts);
}

std::uint64_t PosteriorTable::count(const SecretPair &candidate) const {
    if (candidate.i_b.size() != len_ib || candidate.i_c.size() != len_ic) {
        throw EsrError(ErrorCode::LengthMismatch, "candidate lengths do not match the table");
    }
    return counts.at(concat(candidate.i_b, candidate.i_c).to_uint());
}

SecretPair PosteriorTable::candidate(std::uint64_t key) const {
    auto [i_b, i_c] = split_at(BitVector::from_uint(key, len_ib + len_ic), len_ib);
    return SecretPair{std::move(i_b), std::move(i_c)};
}

std::vector<std::uint64_t> PosteriorTable::marginal_ib() const {
    std::vector<std::uint64_t> out(std::size_t{1} << len_ib, 0);
    for (std::uint64_t k = 0; k < counts.size(); ++k) {
        out[k >> len_ic] += counts[k];
    }
    return out;
}

std::vector<std::uint64_t> PosteriorTable::marginal_ic() const {
    std::vector<std::uint64_t> out(std::size_t{1} << len_ic, 0);
    const std::uint64_t mask = (std::uint64_t{1} << len_ic) - 1;
    for (std::uint64_t k = 0; k < counts.size(); ++k) {
        out[k & mask] += counts[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Posterior enumeration

namespace {

enum class Register { a, b, c, i };

struct Slot {
    Register reg;
    std::size_t offset;  // position of the field's lsb inside the register
    std::size_t width;
};

Slot slot_of(Field f, std::size_t len_ib, std::size_t len_ic) {
    const std::size_t n = len_ib + len_ic;
    switch (f) {
        case Field::a:
            return {Register::a, 0, n};
        case Field::a_B:
            return {Register::a, len_ic, len_ib};
        case Field::a_C:
            return {Register::a, 0, len_ic};
        case Field::b:
            return {Register::b, 0, n};
        case Field::b_B:
            return {Register::b, len_ic, len_ib};
        case Field::b_C:
            return {Register::b, 0, len_ic};
        case Field::c:
            return {Register::c, 0, n};
        case Field::c_B:
            return {Register::c, len_ic, len_ib};
        case Field::c_C:
            return {Register::c, 0, len_ic};
        case Field::i_B:
            return {Register::i, len_ic, len_ib};
        case Field::i_C:
            return {Register::i, 0, len_ic};
        case Field::lengths:
            break;
    }
    return {Register::i, 0, 0};
}

/// Value of `field` in the run recorded by `t`, taken from the public messages
/// where possible and from the private fields otherwise.
BitVector field_value(Field field, const Transcript &t) {
    auto need_private = [&]() -> const PrivateOutcomes & {
        if (!t.outcomes) {
            malformed("view needs " + std::string(to_string(field)) +
                      " but the transcript carries no private outcomes");
        }
        return *t.outcomes;
    };
    auto need_public = [&](const std::optional<BitVector> &v) -> const BitVector & {
        if (!v) {
            malformed("view needs public message " + std::string(to_string(field)) + " which is absent");
        }
        return *v;
    };
    switch (field) {
        case Field::a:
            if (t.outcomes) {
                return t.outcomes->a;
            }
            return concat(need_public(t.messages.a_b), need_public(t.messages.a_c));
        case Field::a_B:
            return need_public(t.messages.a_b);
        case Field::a_C:
            return need_public(t.messages.a_c);
        case Field::b:
            return need_private().b;
        case Field::b_B:
            return need_public(t.messages.b_b);
        case Field::b_C:
            return split_at(need_private().b, t.len_ib).second;
        case Field::c:
            return need_private().c;
        case Field::c_B:
            return split_at(need_private().c, t.len_ib).first;
        case Field::c_C:
            return need_public(t.messages.c_c);
        case Field::i_B:
        case Field::i_C:
            if (!t.secrets) {
                malformed("view needs " + std::string(to_string(field)) + " but the transcript is redacted");
            }
            return field == Field::i_B ? t.secrets->i_b : t.secrets->i_c;
        case Field::lengths:
            break;
    }
    return {};
}

bool is_alice_field(Field f) {
    return f == Field::a || f == Field::a_B || f == Field::a_C;
}

/// Known bits as (mask, value) over the four n-bit registers a, b, c, i.
struct Constraints {
    std::array<std::uint64_t, 4> mask{};
    std::array<std::uint64_t, 4> value{};
    bool consistent = true;
    bool has_alice = true;

    void restrict(Register r, std::uint64_t m, std::uint64_t v) {
        auto k = static_cast<std::size_t>(r);
        const std::uint64_t overlap = mask[k] & m;
        if ((value[k] & overlap) != (v & overlap)) {
            consistent = false;
        }
        mask[k] |= m;
        value[k] |= v & m;
    }
};

Constraints build_constraints(const KnowledgeView &view, const Transcript &t) {
    const std::size_t n = t.len_ib + t.len_ic;
    if (n == 0 || n != t.n) {
        malformed("transcript lengths are inconsistent (n=" + std::to_string(t.n) + ", len_ib=" +
                  std::to_string(t.len_ib) + ", len_ic=" + std::to_string(t.len_ic) + ")");
    }
    if (n > kMaxAuditN) {
        throw EsrError(ErrorCode::TableTooLarge, "posterior enumeration supports n <= " +
                                                     std::to_string(kMaxAuditN) + ", got n=" + std::to_string(n));
    }
    Constraints cons;
    cons.has_alice = t.variant == Variant::ghz3;
    for (const Knowledge &k : view.known()) {
        if (k.field == Field::lengths) {
            continue;
        }
        // The two-party run has no Alice register, so there is nothing to know.
        if (!cons.has_alice && is_alice_field(k.field)) {
            continue;
        }
        const Slot slot = slot_of(k.field, t.len_ib, t.len_ic);
        const BitVector v = field_value(k.field, t);
        if (v.size() != slot.width) {
            malformed("field " + std::string(to_string(k.field)) + " has " + std::to_string(v.size()) +
                      " bits, expected " + std::to_string(slot.width));
        }
        std::uint64_t field_mask = 0;
        if (k.positions.empty()) {
            field_mask = slot.width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << slot.width) - 1;
        } else {
            for (std::size_t p : k.positions) {
                if (p >= slot.width) {
                    throw EsrError(ErrorCode::IndexOutOfRange, "bit " + std::to_string(p) + " of " +
                                                                   std::string(to_string(k.field)) +
                                                                   " is out of range");
                }
                field_mask |= std::uint64_t{1} << p;
            }
        }
        cons.restrict(slot.reg, field_mask << slot.offset, v.to_uint() << slot.offset);
    }
    return cons;
}

std::uint64_t count_candidate(const Constraints &cons, std::uint64_t i, std::uint64_t size) {
    using R = Register;
    const auto ka = static_cast<std::size_t>(R::a);
    const auto kb = static_cast<std::size_t>(R::b);
    const auto kc = static_cast<std::size_t>(R::c);
    const auto ki = static_cast<std::size_t>(R::i);
    if ((i & cons.mask[ki]) != cons.value[ki]) {
        return 0;
    }
    std::uint64_t hits = 0;
    const std::uint64_t a_end = cons.has_alice ? size : 1;
    for (std::uint64_t a = 0; a < a_end; ++a) {
        if ((a & cons.mask[ka]) != cons.value[ka]) {
            continue;
        }
        for (std::uint64_t b = 0; b < size; ++b) {
            if ((b & cons.mask[kb]) != cons.value[kb]) {
                continue;
            }
            const std::uint64_t c = i ^ a ^ b;
            if ((c & cons.mask[kc]) == cons.value[kc]) {
                ++hits;
            }
        }
    }
    return hits;
}

PosteriorTable empty_table(const Transcript &t) {
    PosteriorTable table;
    table.len_ib = t.len_ib;
    table.len_ic = t.len_ic;
    table.counts.assign(std::size_t{1} << (t.len_ib + t.len_ic), 0);
    return table;
}

void finish_total(PosteriorTable &table) {
    table.total = 0;
    for (std::uint64_t c : table.counts) {
        table.total += c;
    }
}

}  // namespace

PosteriorTable posterior_serial(const KnowledgeView &view, const Transcript &transcript) {
    const Constraints cons = build_constraints(view, transcript);
    PosteriorTable table = empty_table(transcript);
    if (cons.consistent) {
        const std::uint64_t size = table.counts.size();
        for (std::uint64_t i = 0; i < size; ++i) {
            table.counts[i] = count_candidate(cons, i, size);
        }
    }
    finish_total(table);
    return table;
}

PosteriorTable posterior(const KnowledgeView &view, const Transcript &transcript) {
    const Constraints cons = build_constraints(view, transcript);
    PosteriorTable table = empty_table(transcript);
    if (cons.consistent) {
        const auto size = static_cast<std::int64_t>(table.counts.size());
        // Each candidate owns its own slot, so the integer counts are exact
        // whatever the schedule.
#pragma omp parallel for schedule(dynamic, 1) if (size >= 64)
        for (std::int64_t i = 0; i < size; ++i) {
            table.counts[i] = count_candidate(cons, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(size));
        }
    }
    finish_total(table);
    return table;
}

// ---------------------------------------------------------------------------
// Transcript verification

bool VerificationReport::passed() const noexcept {
    return std::none_of(checks.begin(), checks.end(), [](const Check &c) { return c.status == CheckStatus::fail; });
}

const Check *VerificationReport::find(std::string_view name) const noexcept {
    for (const auto &c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

std::string describe_len(const char *name, const std::optional<BitVector> &v, std::size_t expected) {
    return std::string(name) + " has " + std::to_string(v->size()) + " bits, expected " + std::to_string(expected);
}

}  // namespace

VerificationReport verify_transcript(const Transcript &t) {
    VerificationReport report;
    auto add = [&](std::string name, CheckStatus status, std::string detail = {}) {
        report.checks.push_back(Check{std::move(name), status, std::move(detail)});
    };
    const bool ghz3 = t.variant == Variant::ghz3;

    if (t.format_version == kTranscriptFormatVersion) {
        add("format_version", CheckStatus::pass);
    } else {
        add("format_version", CheckStatus::fail,
            "expected " + std::to_string(kTranscriptFormatVersion) + ", found " + std::to_string(t.format_version));
    }

    {
        std::string problem;
        if (t.n != t.len_ib + t.len_ic) {
            problem = "n=" + std::to_string(t.n) + " differs from len_ib + len_ic = " +
                      std::to_string(t.len_ib + t.len_ic);
        } else if (t.n == 0) {
            problem = "n must be at least 1";
        } else if (t.messages.lengths != LengthAnnouncement{t.len_ib, t.len_ic}) {
            problem = "announced lengths (" + std::to_string(t.messages.lengths.len_ib) + ", " +
                      std::to_string(t.messages.lengths.len_ic) + ") differ from the header";
        }
        add("length_announcement", problem.empty() ? CheckStatus::pass : CheckStatus::fail, problem);
    }

    bool presence_ok = true;
    {
        std::string problem;
        if (!t.messages.b_b) {
            problem = "b_B is missing";
        } else if (!t.messages.c_c) {
            problem = "c_C is missing";
        } else if (ghz3 && !t.messages.a_b) {
            problem = "a_B is missing";
        } else if (ghz3 && !t.messages.a_c) {
            problem = "a_C is missing";
        } else if (!ghz3 && (t.messages.a_b || t.messages.a_c)) {
            problem = "the epr variant must not carry a_B or a_C";
        }
        presence_ok = problem.empty();
        add("message_presence", presence_ok ? CheckStatus::pass : CheckStatus::fail, problem);
    }

    bool lengths_ok = presence_ok;
    if (presence_ok) {
        std::string problem;
        if (t.messages.b_b->size() != t.len_ib) {
            problem = describe_len("b_B", t.messages.b_b, t.len_ib);
        } else if (t.messages.c_c->size() != t.len_ic) {
            problem = describe_len("c_C", t.messages.c_c, t.len_ic);
        } else if (ghz3 && t.messages.a_b->size() != t.len_ib) {
            problem = describe_len("a_B", t.messages.a_b, t.len_ib);
        } else if (ghz3 && t.messages.a_c->size() != t.len_ic) {
            problem = describe_len("a_C", t.messages.a_c, t.len_ic);
        }
        lengths_ok = problem.empty();
        add("length_consistency", lengths_ok ? CheckStatus::pass : CheckStatus::fail, problem);
    } else {
        add("length_consistency", CheckStatus::not_evaluable, "public messages are incomplete");
    }

    const bool header_ok = t.n == t.len_ib + t.len_ic && t.n > 0;
    bool private_ok = false;
    if (!t.outcomes) {
        add("private_consistency", CheckStatus::not_evaluable, "private outcomes are redacted");
    } else if (!lengths_ok || !header_ok) {
        add("private_consistency", CheckStatus::not_evaluable, "public lengths are inconsistent");
    } else {
        const auto &o = *t.outcomes;
        std::string problem;
        const std::size_t a_len = ghz3 ? t.n : 0;
        if (o.a.size() != a_len || o.b.size() != t.n || o.c.size() != t.n) {
            problem = "private registers have the wrong length";
        } else if (split_at(o.b, t.len_ib).first != *t.messages.b_b) {
            problem = "b_B does not match the high part of b";
        } else if (split_at(o.c, t.len_ib).second != *t.messages.c_c) {
            problem = "c_C does not match the low part of c";
        } else if (ghz3 && concat(*t.messages.a_b, *t.messages.a_c) != o.a) {
            problem = "a_B a_C does not match a";
        }
        private_ok = problem.empty();
        add("private_consistency", private_ok ? CheckStatus::pass : CheckStatus::fail, problem);
    }

    auto register_sum = [&]() {
        const auto &o = *t.outcomes;
        return ghz3 ? bit_xor(o.a, bit_xor(o.b, o.c)) : bit_xor(o.b, o.c);
    };

    if (!private_ok) {
        add("correlation", CheckStatus::not_evaluable, "needs consistent private outcomes");
    } else if (!t.secrets) {
        add("correlation", CheckStatus::not_evaluable, "secrets are redacted");
    } else if (t.secrets->i_b.size() != t.len_ib || t.secrets->i_c.size() != t.len_ic) {
        add("correlation", CheckStatus::fail, "secret lengths differ from the announced lengths");
    } else {
        const bool ok = register_sum() == concat(t.secrets->i_b, t.secrets->i_c);
        add("correlation", ok ? CheckStatus::pass : CheckStatus::fail,
            ok ? "" : std::string(ghz3 ? "a xor b xor c" : "b xor c") + " differs from i_B i_C");
    }

    if (!private_ok) {
        add("reconstruction", CheckStatus::not_evaluable, "needs consistent private outcomes");
    } else if (!t.reconstructed) {
        add("reconstruction", CheckStatus::not_evaluable, "reconstructions are redacted");
    } else {
        auto [sum_b, sum_c] = split_at(register_sum(), t.len_ib);
        std::string problem;
        if (t.reconstructed->i_b != sum_b) {
            problem = "Charlie's i_B does not follow from the registers";
        } else if (t.reconstructed->i_c != sum_c) {
            problem = "Bob's i_C does not follow from the registers";
        }
        add("reconstruction", problem.empty() ? CheckStatus::pass : CheckStatus::fail, problem);
    }

    if (!t.secrets || !t.reconstructed) {
        add("success_flag", CheckStatus::not_evaluable, "secrets or reconstructions are redacted");
    } else {
        const bool expected = *t.secrets == *t.reconstructed;
        add("success_flag", expected == t.success ? CheckStatus::pass : CheckStatus::fail,
            expected == t.success ? "" : "success flag contradicts the reconstructions");
    }
    return report;
}

nlohmann::json report_to_json(const VerificationReport &report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : report.checks) {
        checks.push_back({{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
    }
    return {{"format_version", kTranscriptFormatVersion},
            {"report", "verify"},
            {"checks", std::move(checks)},
            {"passed", report.passed()}};
}

nlohmann::json posterior_to_json(const KnowledgeView &view, const PosteriorTable &table) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::uint64_t k = 0; k < table.counts.size(); ++k) {
        if (table.counts[k] == 0) {
            continue;
        }
        SecretPair cand = table.candidate(k);
        entries.push_back({{"i_B", cand.i_b.to_string()}, {"i_C", cand.i_c.to_string()}, {"count", table.counts[k]}});
    }
    return {{"format_version", kTranscriptFormatVersion},
            {"report", "posterior"},
            {"view", std::string(to_string(view.role()))},
            {"len_ib", table.len_ib},
            {"len_ic", table.len_ic},
            {"candidates", table.candidates()},
            {"support", table.support()},
            {"total", table.total},
            {"entries", std::move(entries)},
            {"verdict", table.is_uniform() ? "UNIFORM" : "NON-UNIFORM"}};
}

}  // namespace esr
