#include "surf/doc_rep.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "surf/binary_io.hpp"

namespace surf {

std::vector<DocId> build_docarray(std::span<const std::uint64_t> sa, const Collection& collection) {
    const std::size_t n = collection.size();
    if (sa.size() != n) throw std::invalid_argument("build_docarray: suffix array length mismatch");
    std::vector<DocId> doc_of_pos(n);
    const auto starts = collection.slot_starts();
    const auto pi = collection.pi();
    for (std::size_t slot = 0; slot + 1 < starts.size(); ++slot)
        std::fill(doc_of_pos.begin() + static_cast<std::ptrdiff_t>(starts[slot]),
                  doc_of_pos.begin() + static_cast<std::ptrdiff_t>(starts[slot + 1]), pi[slot]);
    std::vector<DocId> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = doc_of_pos[sa[i]];
    return d;
}

std::vector<std::int64_t> prev_occurrence(std::span<const DocId> d) {
    const DocId max_doc = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    std::vector<std::int64_t> last(static_cast<std::size_t>(max_doc) + 1, kNoPrevious);
    std::vector<std::int64_t> p(d.size(), kNoPrevious);
    for (std::size_t i = 0; i < d.size(); ++i) {
        p[i] = last[d[i]];
        last[d[i]] = static_cast<std::int64_t>(i);
    }
    return p;
}

std::vector<DocId> RepetitionArray::hat() const {
    std::vector<DocId> out;
    out.reserve(keep.ones());
    for (std::size_t i = 0; i < r.size(); ++i)
        if (keep[i]) out.push_back(r[i]);
    return out;
}

RepetitionArray build_repetition_array(std::span<const DocId> d, std::span<const std::uint64_t> lcp) {
    const std::size_t n = d.size();
    if (lcp.size() != n) throw std::invalid_argument("build_repetition_array: LCP length mismatch");
    const auto prev = prev_occurrence(d);

    // (node, document) per repetition
    std::vector<std::pair<std::uint64_t, DocId>> charged;
    // positions with LCP strictly increasing from bottom to top; equal values
    // are popped so the surviving position of a minimum is the rightmost one
    std::vector<std::uint64_t> stack;
    for (std::size_t i = 1; i < n; ++i) {
        while (!stack.empty() && lcp[stack.back()] >= lcp[i]) stack.pop_back();
        stack.push_back(i);
        if (prev[i] == kNoPrevious) continue;
        const auto p = static_cast<std::uint64_t>(prev[i]);
        const auto it = std::upper_bound(stack.begin(), stack.end(), p);
        charged.emplace_back(*it, d[i]);
    }
    std::sort(charged.begin(), charged.end());

    RepetitionArray out;
    BitBuilder h;
    BitBuilder keep;
    out.r.reserve(charged.size());
    out.bucket.reserve(charged.size());
    h.push_back(true);
    std::size_t next = 0;
    for (std::uint64_t j = 1; j < n; ++j) {
        for (; next < charged.size() && charged[next].first == j; ++next) {
            h.push_back(false);
            out.r.push_back(charged[next].second);
            out.bucket.push_back(j);
            keep.push_back(lcp[j] > 0);
        }
        h.push_back(true);
    }
    out.h = std::move(h).build();
    out.keep = std::move(keep).build();
    return out;
}

RepetitionIndex::RepetitionIndex(const RepetitionArray& reps, std::uint32_t num_docs, bool with_tree)
    : h_(reps.h), keep_(reps.keep) {
    if (with_tree) {
        const auto hat = reps.hat();
        hat_tree_.emplace(hat, num_docs);
    }
}

RepetitionIndex::RepetitionIndex(RankSelectBits h, RankSelectBits keep, std::optional<WaveletTree> hat_tree)
    : h_(std::move(h)), keep_(std::move(keep)), hat_tree_(std::move(hat_tree)) {
    if (keep_.size() != h_.zeros()) throw format_error("repetition index: keep length does not match H");
    if (hat_tree_ && hat_tree_->size() != keep_.ones())
        throw format_error("repetition index: R-hat tree length does not match keep");
}

std::pair<std::uint64_t, std::uint64_t> RepetitionIndex::reps_range(std::uint64_t l, std::uint64_t r) const {
    if (l > r || r >= h_.ones())
        throw std::out_of_range("reps_range: [" + std::to_string(l) + "," + std::to_string(r) +
                                "] invalid for text of length " + std::to_string(h_.ones()));
    return {h_.select1(l) - l, h_.select1(r) - r};
}

std::uint64_t RepetitionIndex::repetitions(std::uint64_t l, std::uint64_t r) const {
    const auto [a, b] = reps_range(l, r);
    return b - a;
}

std::uint64_t RepetitionIndex::doc_frequency(std::uint64_t l, std::uint64_t r) const {
    return (r - l + 1) - repetitions(l, r);
}

NodeRange RepetitionIndex::hat_range(std::uint64_t l, std::uint64_t r) const {
    const auto [a, b] = reps_range(l, r);
    const auto lo = static_cast<std::int64_t>(keep_.rank1(a));
    const auto hi = static_cast<std::int64_t>(keep_.rank1(b)) - 1;
    return NodeRange{NodeHandle{}, lo, hi};
}

void RepetitionIndex::save_counts(std::ostream& os) const {
    h_.save(os);
    keep_.save(os);
}

void RepetitionIndex::save_tree(std::ostream& os) const { hat_tree().save(os); }

RestrictedIndex::RestrictedIndex(std::span<const DocId> d, std::span<const Symbol> text, const RepetitionArray& reps,
                                 std::uint32_t num_docs) {
    const std::size_t n = text.size();
    if (d.size() != n) throw std::invalid_argument("RestrictedIndex: document array length mismatch");
    const Symbol max_sym = n == 0 ? 0 : *std::max_element(text.begin(), text.end());

    // single-symbol loci are the blocks of equal first symbol in SA order
    std::vector<std::uint64_t> locus_start(static_cast<std::size_t>(max_sym) + 2, 0);
    for (auto c : text) ++locus_start[c + 1];
    for (std::size_t c = 1; c < locus_start.size(); ++c) locus_start[c] += locus_start[c - 1];

    std::vector<DocId> d1;
    std::vector<DocId> hat = reps.hat();
    offsets_.assign(locus_start.size(), 0);
    std::vector<DocId> scratch;
    for (Symbol c = 0; c <= max_sym; ++c) {
        offsets_[c] = d1.size();
        const auto lo = locus_start[c], hi = locus_start[c + 1];
        if (lo == hi) continue;
        scratch.assign(d.begin() + static_cast<std::ptrdiff_t>(lo), d.begin() + static_cast<std::ptrdiff_t>(hi));
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        d1.insert(d1.end(), scratch.begin(), scratch.end());

        const auto a = reps.h.select1(lo) - lo;
        const auto b = reps.h.select1(hi - 1) - (hi - 1);
        const auto ha = reps.keep.rank1(a), hb = reps.keep.rank1(b);
        std::sort(hat.begin() + static_cast<std::ptrdiff_t>(ha), hat.begin() + static_cast<std::ptrdiff_t>(hb));
    }
    offsets_.back() = d1.size();
    d1_ = WaveletTree(d1, num_docs);
    hat1_ = WaveletTree(hat, num_docs);
}

RestrictedIndex::RestrictedIndex(std::vector<std::uint64_t> offsets, WaveletTree d1, WaveletTree hat1)
    : offsets_(std::move(offsets)), d1_(std::move(d1)), hat1_(std::move(hat1)) {
    if (offsets_.empty() || offsets_.back() != d1_.size() || !std::is_sorted(offsets_.begin(), offsets_.end()))
        throw format_error("restricted index: inconsistent symbol offsets");
    if (d1_.sigma() != hat1_.sigma()) throw format_error("restricted index: tree alphabets differ");
}

NodeRange RestrictedIndex::d1_range(Symbol c) const {
    if (static_cast<std::size_t>(c) >= num_symbols()) return NodeRange{};
    return NodeRange{NodeHandle{}, static_cast<std::int64_t>(offsets_[c]), static_cast<std::int64_t>(offsets_[c + 1]) - 1};
}

void RestrictedIndex::save(std::ostream& os) const {
    write_u64(os, offsets_.size());
    for (auto o : offsets_) write_u64(os, o);
    d1_.save(os);
    hat1_.save(os);
}

RestrictedIndex RestrictedIndex::load(std::istream& is) {
    const auto count = read_u64(is);
    if (count > (std::uint64_t{1} << 32)) throw format_error("restricted index: implausible symbol count");
    std::vector<std::uint64_t> offsets(count);
    for (auto& o : offsets) o = read_u64(is);
    auto d1 = WaveletTree::load(is);
    auto hat1 = WaveletTree::load(is);
    return RestrictedIndex(std::move(offsets), std::move(d1), std::move(hat1));
}

}  // namespace surf
