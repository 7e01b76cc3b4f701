#include "surf/baseline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace surf {

InvertedIndex::InvertedIndex(const Collection& collection)
    : lists_(collection.vocabulary().size()),
      stats_(collection.stats()),
      lengths_(collection.doc_lengths().begin(), collection.doc_lengths().end()) {
    for (DocId d = 0; d < collection.num_docs(); ++d) {
        for (Symbol s : collection.doc_tokens(d)) {
            if (s < kFirstWordSymbol) continue;
            auto& list = lists_[s];
            if (list.empty() || list.back().doc != d)
                list.push_back({d, 1});
            else
                ++list.back().tf;
        }
    }
}

std::span<const Posting> InvertedIndex::postings(Symbol term) const {
    if (term < kFirstWordSymbol || term >= lists_.size()) return {};
    return lists_[term];
}

namespace {

// Keeps the k best results under the tie policy.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) {}

    void offer(Result r) {
        if (k_ == 0) return;
        if (heap_.size() < k_) {
            heap_.push_back(r);
            std::push_heap(heap_.begin(), heap_.end(), ranks_before);
        } else if (ranks_before(r, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), ranks_before);
            heap_.back() = r;
            std::push_heap(heap_.begin(), heap_.end(), ranks_before);
        }
    }

    ResultList take() && {
        std::sort(heap_.begin(), heap_.end(), ranks_before);
        return std::move(heap_);
    }

private:
    std::size_t k_;
    ResultList heap_;  // worst result on top
};

}  // namespace

ResultList daat_topk(const InvertedIndex& inv, const Query& query, std::size_t k, Mode mode,
                     const MeasureParams& measure) {
    const auto distinct = distinct_elements(query);
    std::vector<std::span<const Posting>> lists;
    std::vector<TermStat> stats;
    for (std::size_t e = 0; e < distinct.elements.size(); ++e) {
        const auto& elem = distinct.elements[e];
        if (elem.size() != 1) throw std::invalid_argument("daat_topk: phrases are not supported");
        const auto list = inv.postings(elem.front());
        if (list.empty()) {
            if (mode == Mode::ranked_and) return {};
            continue;
        }
        lists.push_back(list);
        stats.push_back({list.size(), distinct.multiplicity[e]});
    }
    if (lists.empty()) return {};
    const auto weights = make_query_weights(measure, inv.stats(), stats);

    constexpr DocId kDone = std::numeric_limits<DocId>::max();
    std::vector<std::size_t> cursor(lists.size(), 0);
    std::vector<std::uint64_t> tf(lists.size(), 0);
    const auto current = [&](std::size_t t) { return cursor[t] < lists[t].size() ? lists[t][cursor[t]].doc : kDone; };
    TopK top(k);
    for (;;) {
        DocId doc = kDone;
        for (std::size_t t = 0; t < lists.size(); ++t) doc = std::min(doc, current(t));
        if (doc == kDone) break;
        std::size_t matched = 0;
        for (std::size_t t = 0; t < lists.size(); ++t) {
            if (current(t) == doc) {
                tf[t] = lists[t][cursor[t]].tf;
                ++cursor[t];
                ++matched;
            } else {
                tf[t] = 0;
            }
        }
        if (mode == Mode::ranked_and && matched != lists.size()) continue;
        top.offer({doc, score(measure, inv.stats(), weights, ScoreInput{tf, inv.doc_lengths()[doc]})});
    }
    return std::move(top).take();
}

ResultList direct_scan_topk(const Collection& collection, const Query& query, std::size_t k, Mode mode,
                            const MeasureParams& measure) {
    const auto distinct = distinct_elements(query);
    const std::size_t num_docs = collection.num_docs();

    // tf[e][d] by sliding every element over every document
    std::vector<std::vector<std::uint64_t>> tf;
    std::vector<TermStat> stats;
    for (std::size_t e = 0; e < distinct.elements.size(); ++e) {
        const auto& elem = distinct.elements[e];
        std::vector<std::uint64_t> counts(num_docs, 0);
        std::uint64_t df = 0;
        for (DocId d = 0; d < num_docs; ++d) {
            const auto tokens = collection.doc_tokens(d);
            for (std::size_t i = 0; i + elem.size() <= tokens.size(); ++i)
                if (std::equal(elem.begin(), elem.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) ++counts[d];
            if (counts[d] > 0) ++df;
        }
        if (df == 0) {
            if (mode == Mode::ranked_and) return {};
            continue;
        }
        tf.push_back(std::move(counts));
        stats.push_back({df, distinct.multiplicity[e]});
    }
    if (tf.empty()) return {};
    const auto weights = make_query_weights(measure, collection.stats(), stats);

    ResultList all;
    std::vector<std::uint64_t> doc_tf(tf.size());
    for (DocId d = 0; d < num_docs; ++d) {
        std::size_t present = 0;
        for (std::size_t e = 0; e < tf.size(); ++e) {
            doc_tf[e] = tf[e][d];
            present += doc_tf[e] > 0;
        }
        if (present == 0 || (mode == Mode::ranked_and && present != tf.size())) continue;
        all.push_back({d, score(measure, collection.stats(), weights, ScoreInput{doc_tf, collection.doc_length(d)})});
    }
    std::sort(all.begin(), all.end(), ranks_before);
    if (all.size() > k) all.resize(k);
    return all;
}

}  // namespace surf
