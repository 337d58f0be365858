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
#include <utility>
#include <vector>

namespace esr {

/// An immutable vector over GF(2).
///
/// Element `i` is the coefficient x_i of the register |x> = |x_{n-1}>...|x_0>,
/// so index 0 is the least significant bit. The canonical text form writes
/// x_{n-1} first: BitVector::parse("110")[0] == 0. The empty string is the
/// empty vector.
class BitVector {
public:
    BitVector() = default;

    /// All-zero vector of the given length.
    explicit BitVector(std::size_t length) : bits_(length, 0) {
    }

    /// Builds from bits given least-significant first. Throws InvalidBitString
    /// if any entry is not 0 or 1.
    static BitVector from_lsb_first(std::vector<std::uint8_t> bits);

    /// Parses msb-first text over {0,1}.
    static BitVector parse(std::string_view text);

    /// Low `length` bits of `value`. Requires length <= 64.
    static BitVector from_uint(std::uint64_t value, std::size_t length);

    std::size_t size() const noexcept {
        return bits_.size();
    }
    bool empty() const noexcept {
        return bits_.empty();
    }

    /// Bit x_i. Throws IndexOutOfRange.
    int at(std::size_t i) const;
    int operator[](std::size_t i) const noexcept {
        return bits_[i];
    }

    bool is_zero() const noexcept;
    std::size_t popcount() const noexcept;

    /// Packs into an integer with x_i at bit i. Throws LengthMismatch above 64 bits.
    std::uint64_t to_uint() const;

    std::string to_string() const;

    const std::vector<std::uint8_t> &lsb_first() const noexcept {
        return bits_;
    }

    friend bool operator==(const BitVector &, const BitVector &) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// z_{n-1}x_{n-1} + ... + z_0x_0 over GF(2).
int dot_mod2(const BitVector &z, const BitVector &x);

/// Elementwise exclusive-or.
BitVector bit_xor(const BitVector &u, const BitVector &v);

/// `hi` in the high positions, `lo` in the low ones (i = i_B i_C).
BitVector concat(const BitVector &hi, const BitVector &lo);

/// Inverse of concat: the first `hi_len` rendered bits become `first`.
std::pair<BitVector, BitVector> split_at(const BitVector &v, std::size_t hi_len);

/// Bob's auxiliary vector: i_B followed by len_c zeros.
BitVector make_aux_b(const BitVector &i_b, std::size_t len_c);

/// Charlie's auxiliary vector: len_b zeros followed by i_C.
BitVector make_aux_c(const BitVector &i_c, std::size_t len_b);

}  // namespace esr
