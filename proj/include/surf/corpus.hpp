#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "surf/wavelet_tree.hpp"

namespace surf {

using Symbol = std::uint32_t;
using DocId = std::uint32_t;

inline constexpr Symbol kSentinelSymbol = 0;    // '$', the one-symbol document
inline constexpr Symbol kTerminatorSymbol = 1;  // '#', ends every other document
inline constexpr Symbol kFirstWordSymbol = 2;

// Word ids are handed out by first occurrence starting at 2.
class Vocabulary {
public:
    Vocabulary();

    Symbol intern(std::string_view token);
    std::optional<Symbol> find(std::string_view token) const;
    const std::string& token(Symbol id) const;

    // Number of ids, reserved ones included; the largest id is size() - 1.
    std::size_t size() const { return tokens_.size(); }

    void save(std::ostream& os) const;
    static Vocabulary load(std::istream& is);

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, Symbol> ids_;
};

struct CollectionStats {
    std::uint64_t num_docs = 0;    // N, sentinel document included
    std::uint64_t num_tokens = 0;  // n
    double avg_doc_len = 0.0;      // n / N
    std::uint64_t min_doc_len = 0;
    std::uint64_t max_doc_len = 0;
    std::uint32_t sigma = 0;  // largest symbol id
};

// Document ids ordered by length; see relabel_by_length.
struct Relabeling {
    std::vector<DocId> pi;              // concatenation slot -> document id
    std::vector<std::uint64_t> lengths;  // L, per document id, terminator included
};

// Ids in non-decreasing length order, ties by slot; the sentinel (last slot)
// always receives id 0.
Relabeling relabel_by_length(std::span<const std::uint64_t> slot_lengths);

// L[Sigma_v[0]]: the shortest document below a node of a tree over document ids.
std::uint64_t min_doc_length(std::span<const std::uint64_t> lengths, NodeHandle node, std::uint32_t height);

// The token sequence C: documents concatenated in input order (slots),
// each closed by '#', followed by the sentinel document.
class Collection {
public:
    Collection() = default;

    // docs: word token ids per document, input order, without terminators.
    static Collection from_documents(Vocabulary vocab, const std::vector<std::vector<Symbol>>& docs,
                                     std::vector<std::string> names);
    // Rebuilds all bookkeeping from a concatenation produced by from_documents.
    static Collection from_concatenation(Vocabulary vocab, std::vector<Symbol> text,
                                         std::vector<std::string> names_by_slot);

    std::span<const Symbol> text() const { return text_; }
    std::size_t size() const { return text_.size(); }
    std::size_t num_docs() const { return pi_.size(); }

    const Vocabulary& vocabulary() const { return vocab_; }
    const CollectionStats& stats() const { return stats_; }

    std::span<const DocId> pi() const { return pi_; }
    std::span<const std::uint64_t> slot_starts() const { return slot_starts_; }  // N + 1 entries
    std::span<const std::uint64_t> doc_lengths() const { return lengths_; }       // L by doc id
    std::uint64_t doc_length(DocId d) const { return lengths_.at(d); }

    // Tokens of a document, terminator included.
    std::span<const Symbol> doc_tokens(DocId d) const;
    std::size_t slot_of(DocId d) const { return slot_of_doc_.at(d); }
    const std::string& doc_name(DocId d) const { return names_by_slot_.at(slot_of_doc_.at(d)); }
    std::span<const std::string> names_by_slot() const { return names_by_slot_; }

    // Words of the document in one slot, separated by single spaces.
    std::string slot_text(std::size_t slot) const;

    // FNV-1a over the little-endian token ids.
    std::uint64_t fingerprint() const;

private:
    Vocabulary vocab_;
    std::vector<Symbol> text_;
    std::vector<std::string> names_by_slot_;
    std::vector<DocId> pi_;
    std::vector<std::size_t> slot_of_doc_;
    std::vector<std::uint64_t> slot_starts_;
    std::vector<std::uint64_t> lengths_;
    CollectionStats stats_;
};

// One document per line; tokens split on whitespace. Documents are named by
// their 1-based line number.
Collection ingest(std::istream& lines);
Collection ingest_lines(std::span<const std::string> lines);
// (name, text) pairs in the order given.
Collection ingest_named(std::span<const std::pair<std::string, std::string>> docs);

std::vector<std::string_view> split_whitespace(std::string_view s);

}  // namespace surf
