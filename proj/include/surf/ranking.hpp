#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "surf/corpus.hpp"

namespace surf {

// freq is the plain term-frequency sum; handy for tests and examples.
enum class Measure { bm25, tfidf, lmds, freq };

Measure parse_measure(std::string_view name);
std::string_view to_string(Measure m);

struct MeasureParams {
    Measure kind = Measure::bm25;
    double k1 = 1.2;
    double b = 0.75;
    double mu = 2500.0;
    double epsilon = 1e-6;  // replaces non-positive BM25 query weights

    void validate() const;
};

// Document-independent part of one query element.
struct TermWeight {
    std::uint64_t doc_freq = 0;    // F_{C,t}
    std::uint32_t query_freq = 1;  // f_{Q,t}
    double weight = 0.0;           // w_{Q,t}
};

struct QueryWeights {
    std::vector<TermWeight> terms;
    std::uint64_t m = 0;  // query length, duplicates included
};

// w_{Q,t}. Throws for doc_freq == 0 under TF-IDF and LMDS.
double query_weight(const MeasureParams& params, const CollectionStats& stats, std::uint64_t doc_freq,
                    std::uint32_t query_freq);

struct TermStat {
    std::uint64_t doc_freq;
    std::uint32_t query_freq;
};
QueryWeights make_query_weights(const MeasureParams& params, const CollectionStats& stats,
                                std::span<const TermStat> terms);

struct ScoreInput {
    std::span<const std::uint64_t> tf;  // per element, aligned with QueryWeights::terms
    std::uint64_t doc_len = 1;
};

// Exact score of a document. Elements with tf == 0 contribute nothing.
double score(const MeasureParams& params, const CollectionStats& stats, const QueryWeights& weights,
             const ScoreInput& input);

// The same formula fed with per-element frequency bounds and a lower bound on
// the document length. Every measure here is non-decreasing in tf and
// non-increasing in length, so the result dominates all covered documents.
inline double bound(const MeasureParams& params, const CollectionStats& stats, const QueryWeights& weights,
                    std::span<const std::uint64_t> tf_bounds, std::uint64_t min_doc_len) {
    return score(params, stats, weights, ScoreInput{tf_bounds, min_doc_len});
}

}  // namespace surf
