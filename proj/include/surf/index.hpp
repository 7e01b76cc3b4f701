#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surf/corpus.hpp"
#include "surf/doc_rep.hpp"
#include "surf/suffix_index.hpp"
#include "surf/wavelet_tree.hpp"

namespace surf {

// d: document array tree only. dr: adds the R-hat tree. d1r1: single-symbol
// queries only, served by D1 and R1-hat instead of the full document array.
enum class Variant { d, dr, d1r1 };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v);

struct ComponentInfo {
    std::string tag;
    std::string file;
    std::uint64_t bytes = 0;
    std::uint64_t checksum = 0;
};

struct IndexManifest {
    std::uint32_t version = 1;
    Variant variant = Variant::dr;
    std::uint64_t fingerprint = 0;
    std::uint64_t num_docs = 0;
    std::uint64_t num_tokens = 0;
    std::vector<ComponentInfo> components;

    std::string to_text() const;
    static IndexManifest parse(std::string_view text);
};

class Index {
public:
    static Index build(Collection collection, Variant variant);

    // Writes every component plus manifest.txt into dir (created if needed).
    IndexManifest save(const std::filesystem::path& dir) const;
    // Verifies tags, lengths, checksums and the collection fingerprint.
    static Index load(const std::filesystem::path& dir);
    static IndexManifest read_manifest(const std::filesystem::path& dir);

    Variant variant() const { return variant_; }
    const Collection& collection() const { return collection_; }
    std::span<const std::uint64_t> sa() const { return sa_; }
    std::span<const std::uint64_t> lcp() const { return lcp_; }
    bool has_doc_tree() const { return doc_tree_.has_value(); }
    const WaveletTree& doc_tree() const { return doc_tree_.value(); }
    const RepetitionIndex& repetitions() const { return reps_; }
    bool has_restricted() const { return restricted_.has_value(); }
    const RestrictedIndex& restricted() const { return restricted_.value(); }

    std::optional<Locus> locate(std::span<const Symbol> pattern) const;
    // Occurrences of a pattern in C.
    std::uint64_t count(std::span<const Symbol> pattern) const;

private:
    Collection collection_;
    Variant variant_ = Variant::dr;
    std::vector<std::uint64_t> sa_;
    std::vector<std::uint64_t> lcp_;
    std::optional<WaveletTree> doc_tree_;
    RepetitionIndex reps_;
    std::optional<RestrictedIndex> restricted_;
};

}  // namespace surf
