#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surf/corpus.hpp"
#include "surf/engine.hpp"
#include "surf/query.hpp"
#include "surf/ranking.hpp"

namespace surf {

struct Posting {
    DocId doc = 0;
    std::uint32_t tf = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
};

// Non-positional, uncompressed postings for every word id.
class InvertedIndex {
public:
    InvertedIndex() = default;
    explicit InvertedIndex(const Collection& collection);

    // Ascending by document; empty for unknown or reserved ids.
    std::span<const Posting> postings(Symbol term) const;
    std::size_t num_terms() const { return lists_.size(); }
    const CollectionStats& stats() const { return stats_; }
    std::span<const std::uint64_t> doc_lengths() const { return lengths_; }

private:
    std::vector<std::vector<Posting>> lists_;
    CollectionStats stats_;
    std::vector<std::uint64_t> lengths_;
};

// Document-at-a-time over the postings of every query term; scores every
// candidate. Terms only.
ResultList daat_topk(const InvertedIndex& inv, const Query& query, std::size_t k, Mode mode,
                     const MeasureParams& measure);

// Counts every element in every document by scanning its tokens, scores all
// documents and sorts. Handles phrases.
ResultList direct_scan_topk(const Collection& collection, const Query& query, std::size_t k, Mode mode,
                            const MeasureParams& measure);

}  // namespace surf
