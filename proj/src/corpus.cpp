#include "surf/corpus.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <stdexcept>

#include "surf/binary_io.hpp"

namespace surf {

namespace {

constexpr Tag kVocabTag = make_tag("SRFV");

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        const std::size_t b = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

Vocabulary::Vocabulary() : tokens_{"$", "#"} {}

Symbol Vocabulary::intern(std::string_view token) {
    auto [it, inserted] = ids_.try_emplace(std::string(token), static_cast<Symbol>(tokens_.size()));
    if (inserted) tokens_.emplace_back(token);
    return it->second;
}

std::optional<Symbol> Vocabulary::find(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::token(Symbol id) const {
    if (id >= tokens_.size()) throw std::out_of_range("Vocabulary: unknown id " + std::to_string(id));
    return tokens_[id];
}

void Vocabulary::save(std::ostream& os) const {
    write_header(os, kVocabTag);
    write_u32(os, static_cast<std::uint32_t>(tokens_.size()));
    for (const auto& t : tokens_) write_string(os, t);
}

Vocabulary Vocabulary::load(std::istream& is) {
    read_header(is, kVocabTag);
    const auto count = read_u32(is);
    if (count < kFirstWordSymbol) throw format_error("SRFV: missing reserved ids");
    Vocabulary v;
    read_string(is);
    read_string(is);
    for (std::uint32_t i = kFirstWordSymbol; i < count; ++i) {
        const auto tok = read_string(is);
        if (v.intern(tok) != i) throw format_error("SRFV: duplicate token '" + tok + "'");
    }
    return v;
}

Relabeling relabel_by_length(std::span<const std::uint64_t> slot_lengths) {
    const std::size_t n_docs = slot_lengths.size();
    if (n_docs == 0) return {};
    std::vector<std::size_t> order(n_docs - 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return slot_lengths[a] < slot_lengths[b]; });

    Relabeling rel;
    rel.pi.assign(n_docs, 0);
    rel.lengths.assign(n_docs, 0);
    rel.lengths[0] = slot_lengths[n_docs - 1];
    for (std::size_t id = 1; id < n_docs; ++id) {
        rel.pi[order[id - 1]] = static_cast<DocId>(id);
        rel.lengths[id] = slot_lengths[order[id - 1]];
    }
    return rel;
}

std::uint64_t min_doc_length(std::span<const std::uint64_t> lengths, NodeHandle node, std::uint32_t height) {
    if (lengths.empty()) throw std::invalid_argument("min_doc_length: no documents");
    const std::uint64_t first = node.index << (height - node.level);
    return lengths[std::min<std::uint64_t>(first, lengths.size() - 1)];
}

Collection Collection::from_documents(Vocabulary vocab, const std::vector<std::vector<Symbol>>& docs,
                                      std::vector<std::string> names) {
    if (docs.empty()) throw std::invalid_argument("collection needs at least one document");
    if (names.size() != docs.size()) throw std::invalid_argument("one name per document required");
    std::vector<Symbol> text;
    std::size_t total = 1;
    for (const auto& d : docs) total += d.size() + 1;
    text.reserve(total);
    for (const auto& d : docs) {
        for (Symbol s : d) {
            if (s < kFirstWordSymbol || s >= vocab.size())
                throw std::invalid_argument("document token id " + std::to_string(s) + " is not a word id");
            text.push_back(s);
        }
        text.push_back(kTerminatorSymbol);
    }
    text.push_back(kSentinelSymbol);
    return from_concatenation(std::move(vocab), std::move(text), std::move(names));
}

Collection Collection::from_concatenation(Vocabulary vocab, std::vector<Symbol> text,
                                          std::vector<std::string> names_by_slot) {
    if (text.size() < 2 || text.back() != kSentinelSymbol)
        throw std::invalid_argument("concatenation must hold a document and end with the sentinel");
    Collection c;
    c.vocab_ = std::move(vocab);
    c.text_ = std::move(text);

    c.slot_starts_.push_back(0);
    for (std::size_t i = 0; i + 1 < c.text_.size(); ++i) {
        const Symbol s = c.text_[i];
        if (s == kSentinelSymbol) throw std::invalid_argument("sentinel symbol inside the collection");
        if (s >= c.vocab_.size()) throw std::invalid_argument("token id outside the vocabulary");
        if (s == kTerminatorSymbol) c.slot_starts_.push_back(i + 1);
    }
    if (c.slot_starts_.back() != c.text_.size() - 1)
        throw std::invalid_argument("last document is not terminated");
    c.slot_starts_.push_back(c.text_.size());
    const std::size_t n_docs = c.slot_starts_.size() - 1;

    if (names_by_slot.size() == n_docs - 1) names_by_slot.emplace_back("$");
    if (names_by_slot.size() != n_docs) throw std::invalid_argument("one name per document required");
    c.names_by_slot_ = std::move(names_by_slot);

    std::vector<std::uint64_t> slot_lengths(n_docs);
    for (std::size_t s = 0; s < n_docs; ++s) slot_lengths[s] = c.slot_starts_[s + 1] - c.slot_starts_[s];
    auto rel = relabel_by_length(slot_lengths);
    c.pi_ = std::move(rel.pi);
    c.lengths_ = std::move(rel.lengths);
    c.slot_of_doc_.assign(n_docs, 0);
    for (std::size_t s = 0; s < n_docs; ++s) c.slot_of_doc_[c.pi_[s]] = s;

    c.stats_.num_docs = n_docs;
    c.stats_.num_tokens = c.text_.size();
    c.stats_.avg_doc_len = static_cast<double>(c.text_.size()) / static_cast<double>(n_docs);
    c.stats_.min_doc_len = c.lengths_.front();
    c.stats_.max_doc_len = c.lengths_.back();
    c.stats_.sigma = static_cast<std::uint32_t>(c.vocab_.size() - 1);
    return c;
}

std::span<const Symbol> Collection::doc_tokens(DocId d) const {
    const std::size_t slot = slot_of_doc_.at(d);
    return std::span<const Symbol>(text_).subspan(slot_starts_[slot], slot_starts_[slot + 1] - slot_starts_[slot]);
}

std::string Collection::slot_text(std::size_t slot) const {
    std::string out;
    for (std::uint64_t i = slot_starts_.at(slot); i < slot_starts_.at(slot + 1); ++i) {
        if (text_[i] < kFirstWordSymbol) continue;
        if (!out.empty()) out.push_back(' ');
        out += vocab_.token(text_[i]);
    }
    return out;
}

std::uint64_t Collection::fingerprint() const {
    Fnv1a h;
    for (Symbol s : text_) h.update_u32(s);
    return h.digest();
}

Collection ingest_named(std::span<const std::pair<std::string, std::string>> docs) {
    if (docs.empty()) throw std::invalid_argument("ingest: empty input, at least one document required");
    Vocabulary vocab;
    std::vector<std::vector<Symbol>> ids;
    std::vector<std::string> names;
    ids.reserve(docs.size());
    for (const auto& [name, text] : docs) {
        auto& d = ids.emplace_back();
        for (auto tok : split_whitespace(text)) d.push_back(vocab.intern(tok));
        names.push_back(name);
    }
    return Collection::from_documents(std::move(vocab), ids, std::move(names));
}

Collection ingest_lines(std::span<const std::string> lines) {
    std::vector<std::pair<std::string, std::string>> docs;
    docs.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) docs.emplace_back(std::to_string(i + 1), lines[i]);
    return ingest_named(docs);
}

Collection ingest(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
    return ingest_lines(lines);
}

}  // namespace surf
