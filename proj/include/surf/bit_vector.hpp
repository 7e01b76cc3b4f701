#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace surf {

// Plain bit sequence with constant-time rank and sampled select.
//
// Rank uses one absolute count per 512-bit block; select keeps the block of
// every 512th one and finishes with a binary search over block counts.
class RankSelectBits {
public:
    RankSelectBits() { init_support(); }
    RankSelectBits(std::vector<std::uint64_t> words, std::size_t len);

    static RankSelectBits from_bits(const std::vector<bool>& bits);
    // "0101" style literal, whitespace and commas ignored.
    static RankSelectBits from_string(std::string_view bits);

    std::size_t size() const { return len_; }
    std::size_t ones() const { return ones_; }
    std::size_t zeros() const { return len_ - ones_; }

    bool operator[](std::size_t pos) const { return (words_[pos / 64] >> (pos % 64)) & 1U; }
    bool at(std::size_t pos) const;

    // Number of 1-bits in [0, pos).
    std::size_t rank1(std::size_t pos) const;
    std::size_t rank0(std::size_t pos) const { return pos - rank1(pos); }

    // Position of the (i+1)-th 1-bit.
    std::size_t select1(std::size_t i) const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::size_t size_in_bytes() const;

    // "SRFB" + version + u64 length + little-endian words.
    void save(std::ostream& os) const;
    static RankSelectBits load(std::istream& is);

    friend bool operator==(const RankSelectBits& a, const RankSelectBits& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

private:
    static constexpr std::size_t kBlockWords = 8;
    static constexpr std::size_t kBlockBits = kBlockWords * 64;
    static constexpr std::size_t kSelectSample = 512;

    void init_support();
    std::size_t rank1_unchecked(std::size_t pos) const;

    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
    std::size_t ones_ = 0;
    std::vector<std::uint64_t> block_rank_;
    std::vector<std::uint32_t> select_block_;
};

class BitBuilder {
public:
    BitBuilder() = default;
    explicit BitBuilder(std::size_t len) { resize(len); }

    void push_back(bool bit);
    void set(std::size_t pos, bool bit = true);
    void resize(std::size_t len);
    std::size_t size() const { return len_; }

    RankSelectBits build() &&;

private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

}  // namespace surf
