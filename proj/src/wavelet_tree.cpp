#include "surf/wavelet_tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "surf/binary_io.hpp"

namespace surf {

namespace {

constexpr Tag kTreeTag = make_tag("SRFW");

std::uint32_t height_for(std::uint32_t sigma) {
    return static_cast<std::uint32_t>(std::bit_width(sigma - 1));
}

}  // namespace

WaveletTree::WaveletTree(std::span<const std::uint32_t> seq, std::uint32_t sigma)
    : n_(seq.size()), sigma_(sigma) {
    if (sigma == 0) throw std::invalid_argument("WaveletTree: sigma must be positive");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] >= sigma) {
            throw std::invalid_argument("WaveletTree: symbol " + std::to_string(seq[i]) + " at position " +
                                        std::to_string(i) + " outside alphabet of size " + std::to_string(sigma));
        }
    }
    height_ = height_for(sigma);

    std::vector<std::uint32_t> cur(seq.begin(), seq.end());
    std::vector<std::uint32_t> next(cur.size());
    levels_.reserve(height_);
    for (std::uint32_t level = 0; level < height_; ++level) {
        const std::uint32_t shift = height_ - 1 - level;
        BitBuilder bits(n_);
        for (std::size_t p = 0; p < n_; ++p)
            if ((cur[p] >> shift) & 1U) bits.set(p);
        levels_.push_back(std::move(bits).build());

        // stable counting sort by the top level+1 bits gives the next level's layout
        std::vector<std::size_t> start((std::size_t{1} << (level + 1)) + 1, 0);
        for (auto c : cur) ++start[(c >> shift) + 1];
        for (std::size_t b = 1; b < start.size(); ++b) start[b] += start[b - 1];
        for (auto c : cur) next[start[c >> shift]++] = c;
        cur.swap(next);
    }
    compute_leaf_starts();
}

void WaveletTree::compute_leaf_starts() {
    leaf_start_.assign((std::size_t{1} << height_) + 1, 0);
    leaf_start_.back() = n_;
    // top-down: a node's zeros go left, ones go right
    struct Frame {
        std::uint32_t level;
        std::uint64_t index, start, size;
    };
    std::vector<Frame> stack{{0, 0, 0, n_}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.level == height_) {
            leaf_start_[f.index] = f.start;
            continue;
        }
        const auto& bits = levels_[f.level];
        const std::uint64_t ones = bits.rank1(f.start + f.size) - bits.rank1(f.start);
        const std::uint64_t zeros = f.size - ones;
        stack.push_back({f.level + 1, 2 * f.index + 1, f.start + zeros, ones});
        stack.push_back({f.level + 1, 2 * f.index, f.start, zeros});
    }
}

void WaveletTree::check_node(NodeHandle v) const {
    if (v.level > height_ || v.index >= (std::uint64_t{1} << v.level))
        throw std::out_of_range("WaveletTree: invalid node (" + std::to_string(v.level) + "," +
                                std::to_string(v.index) + ")");
}

std::pair<NodeHandle, NodeHandle> WaveletTree::expand(NodeHandle v) const {
    check_node(v);
    if (is_leaf(v)) throw std::logic_error("WaveletTree::expand: node is a leaf");
    return {{v.level + 1, 2 * v.index}, {v.level + 1, 2 * v.index + 1}};
}

std::pair<NodeRange, NodeRange> WaveletTree::expand(const NodeRange& r) const {
    const auto [left, right] = expand(r.node);
    if (r.empty()) return {NodeRange{left}, NodeRange{right}};
    if (r.lo < 0 || static_cast<std::uint64_t>(r.hi) >= node_size(r.node))
        throw std::out_of_range("WaveletTree::expand: range outside node bounds");

    const auto& bits = levels_[r.node.level];
    const std::uint64_t s = node_start(r.node);
    const auto lo = static_cast<std::uint64_t>(r.lo);
    const auto hi = static_cast<std::uint64_t>(r.hi);
    const auto ones_s = static_cast<std::int64_t>(bits.rank1(s));
    const auto ones_lo = static_cast<std::int64_t>(bits.rank1(s + lo)) - ones_s;
    const auto ones_hi = static_cast<std::int64_t>(bits.rank1(s + hi + 1)) - ones_s;
    return {NodeRange{left, r.lo - ones_lo, r.hi - ones_hi}, NodeRange{right, ones_lo, ones_hi - 1}};
}

std::pair<std::uint32_t, std::uint32_t> WaveletTree::sym_range(NodeHandle v) const {
    check_node(v);
    const std::uint64_t width = std::uint64_t{1} << (height_ - v.level);
    const std::uint64_t c_lo = v.index * width;
    const std::uint64_t c_hi = std::min<std::uint64_t>(c_lo + width - 1, sigma_ - 1);
    return {static_cast<std::uint32_t>(c_lo), static_cast<std::uint32_t>(c_hi)};
}

std::uint64_t WaveletTree::node_size(NodeHandle v) const {
    check_node(v);
    const std::uint32_t shift = height_ - v.level;
    return leaf_start_[(v.index + 1) << shift] - leaf_start_[v.index << shift];
}

NodeRange WaveletTree::range(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) return NodeRange{root()};
    if (lo < 0 || static_cast<std::uint64_t>(hi) >= n_)
        throw std::out_of_range("WaveletTree::range: [" + std::to_string(lo) + "," + std::to_string(hi) +
                                "] outside sequence of length " + std::to_string(n_));
    return NodeRange{root(), lo, hi};
}

std::uint32_t WaveletTree::access(std::size_t pos) const {
    if (pos >= n_) throw std::out_of_range("WaveletTree::access: position out of bounds");
    NodeHandle v = root();
    std::uint64_t p = pos;
    while (!is_leaf(v)) {
        const auto& bits = levels_[v.level];
        const std::uint64_t s = node_start(v);
        const std::uint64_t ones_before = bits.rank1(s + p) - bits.rank1(s);
        if (bits[s + p]) {
            p = ones_before;
            v = {v.level + 1, 2 * v.index + 1};
        } else {
            p = p - ones_before;
            v = {v.level + 1, 2 * v.index};
        }
    }
    return static_cast<std::uint32_t>(v.index);
}

std::vector<std::uint32_t> WaveletTree::reconstruct() const {
    std::vector<std::uint32_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = access(i);
    return out;
}

std::size_t WaveletTree::size_in_bytes() const {
    std::size_t bytes = leaf_start_.size() * sizeof(std::uint64_t);
    for (const auto& l : levels_) bytes += l.size_in_bytes();
    return bytes;
}

void WaveletTree::save(std::ostream& os) const {
    write_header(os, kTreeTag);
    write_u64(os, n_);
    write_u32(os, sigma_);
    write_u32(os, height_);
    for (const auto& l : levels_) l.save(os);
}

WaveletTree WaveletTree::load(std::istream& is) {
    read_header(is, kTreeTag);
    WaveletTree wt;
    wt.n_ = read_u64(is);
    wt.sigma_ = read_u32(is);
    wt.height_ = read_u32(is);
    if (wt.sigma_ == 0 || wt.height_ != height_for(wt.sigma_)) throw format_error("SRFW: inconsistent sigma/height");
    for (std::uint32_t l = 0; l < wt.height_; ++l) {
        auto bits = RankSelectBits::load(is);
        if (bits.size() != wt.n_) throw format_error("SRFW: level length mismatch");
        wt.levels_.push_back(std::move(bits));
    }
    wt.compute_leaf_starts();
    return wt;
}

}  // namespace surf
