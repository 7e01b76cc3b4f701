#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "surf/bit_vector.hpp"
#include "surf/corpus.hpp"
#include "surf/suffix_index.hpp"
#include "surf/wavelet_tree.hpp"

namespace surf {

// D[i] = id of the document in which suffix SA[i] starts.
std::vector<DocId> build_docarray(std::span<const std::uint64_t> sa, const Collection& collection);

inline constexpr std::int64_t kNoPrevious = -1;

// P[i] = largest j < i with D[j] == D[i], or kNoPrevious.
std::vector<std::int64_t> prev_occurrence(std::span<const DocId> d);

// Sadakane's document frequency layout extended with the repetition values.
//
// A repetition is a pair (P[i], i); it is charged to the in-order internal
// node j of the binary suffix tree that is the rightmost minimum of
// LCP(P[i], i]. H holds a leading 1, then per node j = 1..n-1 one 0 per
// repetition followed by a 1. R lists the repeated document ids bucket by
// bucket in ascending id order. keep marks entries of nodes with a non-empty
// path label (LCP[j] > 0); those entries form R-hat.
struct RepetitionArray {
    RankSelectBits h;
    std::vector<DocId> r;
    std::vector<std::uint64_t> bucket;  // node j of each R entry
    RankSelectBits keep;

    std::vector<DocId> hat() const;
};

RepetitionArray build_repetition_array(std::span<const DocId> d, std::span<const std::uint64_t> lcp);

// Counting over H, plus an optional wavelet tree over R-hat for per-node
// repetition counts.
class RepetitionIndex {
public:
    RepetitionIndex() = default;
    RepetitionIndex(const RepetitionArray& reps, std::uint32_t num_docs, bool with_tree);
    RepetitionIndex(RankSelectBits h, RankSelectBits keep, std::optional<WaveletTree> hat_tree);

    // Half-open range [a, b) of R covering the repetitions inside D[l..r].
    std::pair<std::uint64_t, std::uint64_t> reps_range(std::uint64_t l, std::uint64_t r) const;
    std::uint64_t repetitions(std::uint64_t l, std::uint64_t r) const;
    // Distinct documents in D[l..r] for a locus [l, r].
    std::uint64_t doc_frequency(std::uint64_t l, std::uint64_t r) const;

    // R-hat range of a locus, as a root range of hat_tree().
    NodeRange hat_range(std::uint64_t l, std::uint64_t r) const;

    const RankSelectBits& h() const { return h_; }
    const RankSelectBits& keep() const { return keep_; }
    bool has_hat_tree() const { return hat_tree_.has_value(); }
    const WaveletTree& hat_tree() const { return hat_tree_.value(); }
    std::uint64_t text_size() const { return h_.ones(); }

    void save_counts(std::ostream& os) const;  // H and keep
    void save_tree(std::ostream& os) const;    // R-hat wavelet tree

private:
    RankSelectBits h_;
    RankSelectBits keep_;
    std::optional<WaveletTree> hat_tree_;
};

// delta = repetitions below the node + 1, an upper bound on the term
// frequency of any single document below it. Zero when the term is absent.
inline std::uint64_t delta(const NodeRange& doc_range, const NodeRange& hat_range) {
    return doc_range.empty() ? 0 : hat_range.size() + 1;
}

// Structures for queries restricted to single symbols: per symbol the sorted
// distinct documents of its locus (D1) and R-hat with every symbol's span
// sorted (R1-hat).
class RestrictedIndex {
public:
    RestrictedIndex() = default;
    RestrictedIndex(std::span<const DocId> d, std::span<const Symbol> text, const RepetitionArray& reps,
                    std::uint32_t num_docs);
    RestrictedIndex(std::vector<std::uint64_t> offsets, WaveletTree d1, WaveletTree hat1);

    std::size_t num_symbols() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::uint64_t d1_offset(Symbol c) const { return offsets_.at(c); }
    std::uint64_t d1_count(Symbol c) const { return offsets_.at(c + 1) - offsets_.at(c); }
    // Root range of c's segment in d1_tree(); empty for unknown symbols.
    NodeRange d1_range(Symbol c) const;

    const WaveletTree& d1_tree() const { return d1_; }
    const WaveletTree& hat1_tree() const { return hat1_; }
    std::vector<DocId> d1_values() const { return d1_.reconstruct(); }
    std::vector<DocId> hat1_values() const { return hat1_.reconstruct(); }

    void save(std::ostream& os) const;
    static RestrictedIndex load(std::istream& is);

private:
    std::vector<std::uint64_t> offsets_;
    WaveletTree d1_;
    WaveletTree hat1_;
};

// Exact term frequency at a leaf of the parallel D1 / R1-hat traversal.
inline std::uint64_t restricted_tf_leaf(const NodeRange& d1_leaf, const NodeRange& hat1_leaf) {
    return d1_leaf.empty() ? 0 : hat1_leaf.size() + 1;
}

}  // namespace surf
