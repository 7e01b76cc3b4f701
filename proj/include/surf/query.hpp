#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surf/corpus.hpp"

namespace surf {

class Index;

// Stands in for query words missing from the vocabulary; never matches.
inline constexpr Symbol kUnknownSymbol = std::numeric_limits<Symbol>::max();

// Bag of elements; a term is a one-symbol element, a phrase a longer one.
struct Query {
    std::vector<std::vector<Symbol>> elements;

    std::size_t m() const { return elements.size(); }
    bool has_phrase() const;
    // Throws std::invalid_argument on empty elements or reserved symbols in
    // illegal positions ('#' may only close a phrase, '$' never appears).
    void validate() const;
};

// Duplicates collapsed in first-appearance order.
struct DistinctElements {
    std::vector<std::vector<Symbol>> elements;
    std::vector<std::uint32_t> multiplicity;
};
DistinctElements distinct_elements(const Query& q);

// Query text: whitespace-separated words, phrases in double quotes.
using TextQuery = std::vector<std::vector<std::string>>;

TextQuery parse_query_text(std::string_view body);
std::string format_query_text(const TextQuery& q);
Query to_query(const TextQuery& q, const Vocabulary& vocab);

struct QueryLine {
    std::string qid;
    std::string body;
};

// "qid<TAB>body" per line; blank lines skipped; qids must be unique.
std::vector<QueryLine> read_query_file(std::istream& in);

// Greedy multi-word expression merging: repeatedly joins the adjacent pair
// with the highest association count(ab)*n / (count(a)*count(b)) as long as
// it reaches threshold.
TextQuery mwe_parse(const Index& index, const TextQuery& q, double threshold = 10.0);

struct Result;
// TREC run lines "qid Q0 docname rank score surf", score with 6 decimals.
std::string format_run(std::string_view qid, std::span<const Result> results, const Collection& collection);

}  // namespace surf
