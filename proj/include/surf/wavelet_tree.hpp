#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "surf/bit_vector.hpp"

namespace surf {

// i-th node of a level; the root is (0,0) and leaves sit at level == height.
struct NodeHandle {
    std::uint32_t level = 0;
    std::uint64_t index = 0;

    friend bool operator==(const NodeHandle&, const NodeHandle&) = default;
};

// Inclusive interval [lo, hi] over the subsequence filtered by a node's
// symbols. Empty iff lo > hi.
struct NodeRange {
    NodeHandle node;
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    bool empty() const { return lo > hi; }
    std::uint64_t size() const { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo + 1); }

    friend bool operator==(const NodeRange& a, const NodeRange& b) {
        if (a.node != b.node) return false;
        if (a.empty() || b.empty()) return a.empty() && b.empty();
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// Perfectly balanced wavelet tree over [0, sigma), stored level-wise: one
// bit sequence of length size() per level, nodes laid out left to right.
// The node of symbol c at level l is c >> (height - l).
class WaveletTree {
public:
    WaveletTree() = default;
    WaveletTree(std::span<const std::uint32_t> seq, std::uint32_t sigma);

    std::size_t size() const { return n_; }
    std::uint32_t sigma() const { return sigma_; }
    std::uint32_t height() const { return height_; }

    NodeHandle root() const { return {}; }
    bool is_leaf(NodeHandle v) const { return v.level == height_; }

    // Children of v; v must not be a leaf.
    std::pair<NodeHandle, NodeHandle> expand(NodeHandle v) const;
    // Maps a range at v to the ranges holding the same elements in v's children.
    std::pair<NodeRange, NodeRange> expand(const NodeRange& r) const;

    // [c_lo, c_hi] of the symbols below v, clamped to sigma - 1.
    std::pair<std::uint32_t, std::uint32_t> sym_range(NodeHandle v) const;

    // Length of the subsequence filtered by v.
    std::uint64_t node_size(NodeHandle v) const;

    // Root range [lo, hi] of the original sequence; lo > hi yields an empty range.
    NodeRange range(std::int64_t lo, std::int64_t hi) const;

    std::uint32_t access(std::size_t pos) const;
    std::vector<std::uint32_t> reconstruct() const;

    std::size_t size_in_bytes() const;
    std::span<const RankSelectBits> levels() const { return levels_; }

    void save(std::ostream& os) const;
    static WaveletTree load(std::istream& is);

private:
    void check_node(NodeHandle v) const;
    void compute_leaf_starts();
    std::uint64_t node_start(NodeHandle v) const { return leaf_start_[v.index << (height_ - v.level)]; }

    std::size_t n_ = 0;
    std::uint32_t sigma_ = 1;
    std::uint32_t height_ = 0;
    std::vector<RankSelectBits> levels_;
    // number of elements with symbol < c, for c in [0, 2^height]
    std::vector<std::uint64_t> leaf_start_{0, 0};
};

inline std::pair<NodeHandle, NodeHandle> expand(const WaveletTree& wt, NodeHandle v) { return wt.expand(v); }

inline std::pair<NodeRange, NodeRange> expand_range(const WaveletTree& wt, const NodeRange& r) {
    return wt.expand(r);
}

inline std::pair<std::uint32_t, std::uint32_t> sym_range(const WaveletTree& wt, NodeHandle v) {
    return wt.sym_range(v);
}

}  // namespace surf
