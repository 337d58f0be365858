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

#include "esr/bitvec.hpp"

#include <algorithm>
#include <numeric>

#include "esr/errors.hpp"

namespace esr {

namespace {

void require_same_length(const BitVector &u, const BitVector &v, const char *op) {
    if (u.size() != v.size()) {
        throw EsrError(ErrorCode::LengthMismatch, std::string(op) + ": lengths " + std::to_string(u.size()) +
                                                      " and " + std::to_string(v.size()) + " differ");
    }
}

}  // namespace

BitVector BitVector::from_lsb_first(std::vector<std::uint8_t> bits) {
    for (auto b : bits) {
        if (b > 1) {
            throw EsrError(ErrorCode::InvalidBitString, "bit value out of range");
        }
    }
    BitVector v;
    v.bits_ = std::move(bits);
    return v;
}

BitVector BitVector::parse(std::string_view text) {
    std::vector<std::uint8_t> bits(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        char ch = text[text.size() - 1 - k];
        if (ch != '0' && ch != '1') {
            throw EsrError(ErrorCode::InvalidBitString,
                           "invalid bitstring '" + std::string(text) + "': only 0 and 1 are allowed");
        }
        bits[k] = static_cast<std::uint8_t>(ch - '0');
    }
    BitVector v;
    v.bits_ = std::move(bits);
    return v;
}

BitVector BitVector::from_uint(std::uint64_t value, std::size_t length) {
    if (length > 64) {
        throw EsrError(ErrorCode::LengthMismatch, "from_uint: length exceeds 64 bits");
    }
    BitVector v(length);
    for (std::size_t i = 0; i < length; ++i) {
        v.bits_[i] = static_cast<std::uint8_t>((value >> i) & 1u);
    }
    return v;
}

int BitVector::at(std::size_t i) const {
    if (i >= bits_.size()) {
        throw EsrError(ErrorCode::IndexOutOfRange, "bit index " + std::to_string(i) + " out of range");
    }
    return bits_[i];
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

std::size_t BitVector::popcount() const noexcept {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

std::uint64_t BitVector::to_uint() const {
    if (bits_.size() > 64) {
        throw EsrError(ErrorCode::LengthMismatch, "to_uint: vector longer than 64 bits");
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        value |= static_cast<std::uint64_t>(bits_[i]) << i;
    }
    return value;
}

std::string BitVector::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        out[bits_.size() - 1 - i] = static_cast<char>('0' + bits_[i]);
    }
    return out;
}

int dot_mod2(const BitVector &z, const BitVector &x) {
    require_same_length(z, x, "dot_mod2");
    int acc = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        acc ^= z[i] & x[i];
    }
    return acc;
}

BitVector bit_xor(const BitVector &u, const BitVector &v) {
    require_same_length(u, v, "xor");
    std::vector<std::uint8_t> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(u[i] ^ v[i]);
    }
    return BitVector::from_lsb_first(std::move(out));
}

BitVector concat(const BitVector &hi, const BitVector &lo) {
    std::vector<std::uint8_t> out;
    out.reserve(hi.size() + lo.size());
    out.insert(out.end(), lo.lsb_first().begin(), lo.lsb_first().end());
    out.insert(out.end(), hi.lsb_first().begin(), hi.lsb_first().end());
    return BitVector::from_lsb_first(std::move(out));
}

std::pair<BitVector, BitVector> split_at(const BitVector &v, std::size_t hi_len) {
    if (hi_len > v.size()) {
        throw EsrError(ErrorCode::LengthMismatch, "split_at: hi_len " + std::to_string(hi_len) +
                                                      " exceeds length " + std::to_string(v.size()));
    }
    const auto &bits = v.lsb_first();
    auto lo_len = static_cast<std::ptrdiff_t>(v.size() - hi_len);
    std::vector<std::uint8_t> lo(bits.begin(), bits.begin() + lo_len);
    std::vector<std::uint8_t> hi(bits.begin() + lo_len, bits.end());
    return {BitVector::from_lsb_first(std::move(hi)), BitVector::from_lsb_first(std::move(lo))};
}

BitVector make_aux_b(const BitVector &i_b, std::size_t len_c) {
    return concat(i_b, BitVector(len_c));
}

BitVector make_aux_c(const BitVector &i_c, std::size_t len_b) {
    return concat(BitVector(len_b), i_c);
}

}  // namespace esr
