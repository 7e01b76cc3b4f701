#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "surf/index.hpp"
#include "surf/query.hpp"
#include "surf/ranking.hpp"
#include "surf/suffix_index.hpp"

namespace surf {

enum class Mode { ranked_or, ranked_and };

// e0: range sizes with the global shortest length. e1: range sizes with the
// shortest length below the node. e2: repetition bound delta with e1's length.
enum class Estimator { e0, e1, e2 };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode m);
Estimator parse_estimator(std::string_view name);
std::string_view to_string(Estimator e);

// Configuration the index cannot serve (estimator/variant mismatch, phrases
// on a restricted index).
class incompatible_config : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SearchConfig {
    std::size_t k = 10;
    Mode mode = Mode::ranked_or;
    MeasureParams measure;
    Estimator estimator = Estimator::e2;
    Variant variant = Variant::dr;
};

// Throws incompatible_config when index cannot answer queries under config.
void check_compatible(const Index& index, const SearchConfig& config, const Query& query);

struct Result {
    DocId doc = 0;
    double score = 0.0;

    friend bool operator==(const Result&, const Result&) = default;
};

// Non-increasing score, ties by ascending document id.
using ResultList = std::vector<Result>;

inline bool ranks_before(const Result& a, const Result& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
}

struct TraversalStats {
    std::uint64_t states_processed = 0;
    std::uint64_t heap_pushes = 0;  // the root state is not counted
    std::optional<std::uint64_t> exhaustive_denominator;
};

struct QueryPlan {
    std::vector<std::vector<Symbol>> elements;  // distinct, present elements
    std::vector<Locus> loci;
    QueryWeights weights;
    bool empty_result = false;
};

// Locates every element and computes document frequencies and query
// weights. Ranked-OR drops absent elements; Ranked-AND yields an empty plan
// as soon as one element is absent.
QueryPlan plan(const Index& index, const Query& query, const SearchConfig& config);

struct SearchResult {
    ResultList results;
    TraversalStats stats;
};

// Best-first traversal of the document tree. A state holds an upper bound on
// the score of every document below its node; leaves carry exact scores, so
// the first k leaves popped are the top-k.
SearchResult top_k(const Index& index, const SearchConfig& config, const Query& query);

// States processed when the queue is drained (k = N).
std::uint64_t exhaustive_states(const Index& index, const SearchConfig& config, const Query& query);

}  // namespace surf
