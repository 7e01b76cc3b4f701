#include "surf/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "surf/binary_io.hpp"

namespace surf {

namespace {

constexpr Tag kBitsTag = make_tag("SRFB");

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Position of the (r+1)-th set bit of w; w must have more than r set bits.
unsigned select_in_word(std::uint64_t w, unsigned r) {
    for (unsigned i = 0; i < r; ++i) w &= w - 1;
    return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

RankSelectBits::RankSelectBits(std::vector<std::uint64_t> words, std::size_t len)
    : words_(std::move(words)), len_(len) {
    if (words_.size() < words_for(len_)) throw std::invalid_argument("RankSelectBits: too few words for length");
    words_.resize(words_for(len_));
    if (len_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (len_ % 64)) - 1;
    init_support();
}

RankSelectBits RankSelectBits::from_bits(const std::vector<bool>& bits) {
    BitBuilder b(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) b.set(i);
    return std::move(b).build();
}

RankSelectBits RankSelectBits::from_string(std::string_view bits) {
    BitBuilder b;
    for (char c : bits) {
        if (c == '0' || c == '1')
            b.push_back(c == '1');
        else if (c != ' ' && c != ',' && c != '\n' && c != '\t')
            throw std::invalid_argument(std::string("RankSelectBits: bad bit character '") + c + "'");
    }
    return std::move(b).build();
}

void RankSelectBits::init_support() {
    const std::size_t nblocks = (words_.size() + kBlockWords - 1) / kBlockWords;
    block_rank_.assign(nblocks + 1, 0);
    select_block_.clear();
    std::uint64_t acc = 0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        block_rank_[b] = acc;
        const std::size_t end = std::min(words_.size(), (b + 1) * kBlockWords);
        for (std::size_t w = b * kBlockWords; w < end; ++w) {
            const auto pc = static_cast<std::uint64_t>(std::popcount(words_[w]));
            // sample the block holding every kSelectSample-th one
            while (select_block_.size() * kSelectSample < acc + pc)
                select_block_.push_back(static_cast<std::uint32_t>(b));
            acc += pc;
        }
    }
    block_rank_[nblocks] = acc;
    ones_ = acc;
}

bool RankSelectBits::at(std::size_t pos) const {
    if (pos >= len_) throw std::out_of_range("RankSelectBits::at: position out of bounds");
    return (*this)[pos];
}

std::size_t RankSelectBits::rank1_unchecked(std::size_t pos) const {
    const std::size_t word = pos / 64;
    const std::size_t block = word / kBlockWords;
    std::size_t r = block_rank_[block];
    for (std::size_t w = block * kBlockWords; w < word; ++w) r += std::popcount(words_[w]);
    if (pos % 64 != 0) r += std::popcount(words_[word] & ((std::uint64_t{1} << (pos % 64)) - 1));
    return r;
}

std::size_t RankSelectBits::rank1(std::size_t pos) const {
    if (pos > len_) throw std::out_of_range("RankSelectBits::rank1: position " + std::to_string(pos) + " > length " + std::to_string(len_));
    return rank1_unchecked(pos);
}

std::size_t RankSelectBits::select1(std::size_t i) const {
    if (i >= ones_) throw std::out_of_range("RankSelectBits::select1: rank " + std::to_string(i) + " >= ones " + std::to_string(ones_));
    // last block whose starting rank is <= i
    std::size_t lo = select_block_[i / kSelectSample];
    std::size_t hi = (i / kSelectSample + 1 < select_block_.size()) ? select_block_[i / kSelectSample + 1] + 1
                                                                     : block_rank_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (block_rank_[mid] <= i)
            lo = mid;
        else
            hi = mid;
    }
    std::size_t remaining = i - block_rank_[lo];
    for (std::size_t w = lo * kBlockWords;; ++w) {
        const auto pc = static_cast<std::size_t>(std::popcount(words_[w]));
        if (remaining < pc) return w * 64 + select_in_word(words_[w], static_cast<unsigned>(remaining));
        remaining -= pc;
    }
}

std::size_t RankSelectBits::size_in_bytes() const {
    return words_.size() * sizeof(std::uint64_t) + block_rank_.size() * sizeof(std::uint64_t) +
           select_block_.size() * sizeof(std::uint32_t);
}

void RankSelectBits::save(std::ostream& os) const {
    write_header(os, kBitsTag);
    write_u64(os, len_);
    for (auto w : words_) write_u64(os, w);
}

RankSelectBits RankSelectBits::load(std::istream& is) {
    read_header(is, kBitsTag);
    const auto len = read_u64(is);
    std::vector<std::uint64_t> words(words_for(len));
    for (auto& w : words) w = read_u64(is);
    if (len % 64 != 0 && (words.back() >> (len % 64)) != 0) throw format_error("SRFB: padding bits set");
    return RankSelectBits(std::move(words), len);
}

void BitBuilder::push_back(bool bit) {
    if (len_ % 64 == 0) words_.push_back(0);
    if (bit) words_[len_ / 64] |= std::uint64_t{1} << (len_ % 64);
    ++len_;
}

void BitBuilder::set(std::size_t pos, bool bit) {
    if (pos >= len_) throw std::out_of_range("BitBuilder::set: position out of bounds");
    const auto mask = std::uint64_t{1} << (pos % 64);
    if (bit)
        words_[pos / 64] |= mask;
    else
        words_[pos / 64] &= ~mask;
}

void BitBuilder::resize(std::size_t len) {
    words_.resize(words_for(len), 0);
    if (len < len_ && len % 64 != 0) words_.back() &= (std::uint64_t{1} << (len % 64)) - 1;
    len_ = len;
}

RankSelectBits BitBuilder::build() && { return RankSelectBits(std::move(words_), len_); }

}  // namespace surf
