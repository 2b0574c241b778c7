/*
Copyright 2026 The swapmc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace swapmc {

/// Dense 0/1 matrix stored as packed 64-bit rows.
///
/// Bit `c` of row `r` lives in word `c / 64`, position `c % 64`. Unused
/// high bits of the last word of each row are always zero, so word-wise
/// comparison and popcount are exact.
class BitMatrix {
public:
    using word_type = std::uint64_t;
    static constexpr int word_bits = 64;

    BitMatrix() = default;

    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + word_bits - 1) / word_bits),
          bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_per_row_), 0) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    bool test(int r, int c) const noexcept {
        assert(in_range(r, c));
        return (bits_[index(r, c)] >> (c % word_bits)) & 1u;
    }

    void set(int r, int c, bool value = true) noexcept {
        assert(in_range(r, c));
        const word_type mask = word_type{1} << (c % word_bits);
        if (value)
            bits_[index(r, c)] |= mask;
        else
            bits_[index(r, c)] &= ~mask;
    }

    void flip(int r, int c) noexcept {
        assert(in_range(r, c));
        bits_[index(r, c)] ^= word_type{1} << (c % word_bits);
    }

    std::span<const word_type> row(int r) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(r) * words_per_row_,
                static_cast<std::size_t>(words_per_row_)};
    }

    int row_count(int r) const noexcept {
        int total = 0;
        for (word_type w : row(r)) total += std::popcount(w);
        return total;
    }

    int col_count(int c) const noexcept {
        int total = 0;
        for (int r = 0; r < rows_; ++r) total += test(r, c) ? 1 : 0;
        return total;
    }

    std::size_t count() const noexcept {
        std::size_t total = 0;
        for (word_type w : bits_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    /// Number of positions where the two matrices differ. Shapes must agree.
    std::size_t hamming(const BitMatrix& other) const noexcept {
        assert(rows_ == other.rows_ && cols_ == other.cols_);
        std::size_t total = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            total += static_cast<std::size_t>(std::popcount(bits_[i] ^ other.bits_[i]));
        return total;
    }

    BitMatrix& operator^=(const BitMatrix& other) noexcept {
        assert(rows_ == other.rows_ && cols_ == other.cols_);
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
        return *this;
    }

    friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) noexcept { return a ^= b; }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    /// Lexicographic order on the rows, each row compared as its word sequence.
    friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) noexcept {
        if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
        if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.bits_.begin(), a.bits_.end(),
                                                      b.bits_.begin(), b.bits_.end());
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(rows_) * 31u ^
                          static_cast<std::uint64_t>(cols_);
        for (word_type w : bits_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    std::span<const word_type> words() const noexcept { return bits_; }

private:
    bool in_range(int r, int c) const noexcept { return r >= 0 && r < rows_ && c >= 0 && c < cols_; }

    std::size_t index(int r, int c) const noexcept {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(words_per_row_) +
               static_cast<std::size_t>(c / word_bits);
    }

    int rows_ = 0;
    int cols_ = 0;
    int words_per_row_ = 0;
    std::vector<word_type> bits_;
};

struct BitMatrixHash {
    std::size_t operator()(const BitMatrix& m) const noexcept { return m.hash(); }
};

}  // namespace swapmc
