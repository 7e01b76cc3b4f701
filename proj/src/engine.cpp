#include "surf/engine.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace surf {

Mode parse_mode(std::string_view name) {
    if (name == "or") return Mode::ranked_or;
    if (name == "and") return Mode::ranked_and;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(Mode m) { return m == Mode::ranked_or ? "or" : "and"; }

Estimator parse_estimator(std::string_view name) {
    if (name == "e0") return Estimator::e0;
    if (name == "e1") return Estimator::e1;
    if (name == "e2") return Estimator::e2;
    throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::e0: return "e0";
        case Estimator::e1: return "e1";
        case Estimator::e2: return "e2";
    }
    return "?";
}

void check_compatible(const Index& index, const SearchConfig& config, const Query& query) {
    switch (config.variant) {
        case Variant::d:
            if (!index.has_doc_tree()) throw incompatible_config("index has no document array tree");
            if (config.estimator == Estimator::e2) throw incompatible_config("estimator e2 needs the repetition tree");
            break;
        case Variant::dr:
            if (!index.has_doc_tree() || !index.repetitions().has_hat_tree())
                throw incompatible_config("index lacks the document array or repetition tree");
            break;
        case Variant::d1r1:
            if (!index.has_restricted()) throw incompatible_config("index has no restricted structures");
            if (query.has_phrase()) throw incompatible_config("restricted index answers single-term elements only");
            break;
    }
}

QueryPlan plan(const Index& index, const Query& query, const SearchConfig& config) {
    if (config.k == 0) throw std::invalid_argument("k must be positive");
    if (query.elements.empty()) throw std::invalid_argument("query has no elements");
    query.validate();
    config.measure.validate();

    QueryPlan p;
    const auto distinct = distinct_elements(query);
    std::vector<TermStat> stats;
    for (std::size_t e = 0; e < distinct.elements.size(); ++e) {
        const auto& elem = distinct.elements[e];
        std::optional<Locus> loc;
        if (std::find(elem.begin(), elem.end(), kUnknownSymbol) == elem.end()) loc = index.locate(elem);
        if (!loc) {
            if (config.mode == Mode::ranked_and) {
                p = QueryPlan{};
                p.empty_result = true;
                return p;
            }
            continue;
        }
        p.elements.push_back(elem);
        p.loci.push_back(*loc);
        stats.push_back({index.repetitions().doc_frequency(loc->lo, loc->hi), distinct.multiplicity[e]});
    }
    if (p.elements.empty()) {
        p.empty_result = true;
        return p;
    }
    p.weights = make_query_weights(config.measure, index.collection().stats(), stats);
    return p;
}

namespace {

struct State {
    double bound = 0.0;
    NodeHandle node;
    std::uint64_t first_symbol = 0;
    // per element: primary lo, hi [, secondary lo, hi]
    std::vector<std::int64_t> ranges;
};

// Max-heap order: larger bound, then smaller first symbol (so equal scores
// surface in ascending document order), then deeper node.
struct LowerPriority {
    bool operator()(const State& a, const State& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        if (a.first_symbol != b.first_symbol) return a.first_symbol > b.first_symbol;
        return a.node.level < b.node.level;
    }
};

class Traversal {
public:
    Traversal(const Index& index, const SearchConfig& config, const QueryPlan& plan)
        : index_(index),
          config_(config),
          plan_(plan),
          restricted_(config.variant == Variant::d1r1),
          secondary_(restricted_ || config.estimator == Estimator::e2),
          stride_(secondary_ ? 4 : 2),
          lengths_(index.collection().doc_lengths()),
          tf_(plan.elements.size(), 0) {
        if (restricted_) {
            primary_tree_ = &index.restricted().d1_tree();
            secondary_tree_ = &index.restricted().hat1_tree();
        } else {
            primary_tree_ = &index.doc_tree();
            if (secondary_) secondary_tree_ = &index.repetitions().hat_tree();
        }
        height_ = primary_tree_->height();
    }

    SearchResult run(std::uint64_t k) {
        SearchResult out;
        State root;
        root.node = primary_tree_->root();
        root.ranges.reserve(stride_ * plan_.elements.size());
        for (std::size_t e = 0; e < plan_.elements.size(); ++e) {
            const Locus& loc = plan_.loci[e];
            NodeRange primary{root.node, static_cast<std::int64_t>(loc.lo), static_cast<std::int64_t>(loc.hi)};
            if (restricted_) primary = index_.restricted().d1_range(plan_.elements[e].front());
            root.ranges.push_back(primary.lo);
            root.ranges.push_back(primary.hi);
            if (secondary_) {
                const auto hat = index_.repetitions().hat_range(loc.lo, loc.hi);
                root.ranges.push_back(hat.lo);
                root.ranges.push_back(hat.hi);
            }
        }
        if (!viable(root.ranges)) return out;
        root.bound = estimate(root.node, root.ranges);

        std::priority_queue<State, std::vector<State>, LowerPriority> queue;
        queue.push(std::move(root));
        while (!queue.empty() && out.results.size() < k) {
            State s = queue.top();
            queue.pop();
            ++out.stats.states_processed;
            if (s.node.level == height_) {
                out.results.push_back({static_cast<DocId>(s.node.index), s.bound});
                continue;
            }
            const auto [left, right] = primary_tree_->expand(s.node);
            State children[2];
            children[0].node = left;
            children[1].node = right;
            for (auto& c : children) {
                c.ranges.resize(s.ranges.size());
                c.first_symbol = c.node.index << (height_ - c.node.level);
            }
            for (std::size_t e = 0; e < plan_.elements.size(); ++e) {
                const std::size_t at = e * stride_;
                split(*primary_tree_, s.node, s.ranges, at, children);
                if (secondary_) split(*secondary_tree_, s.node, s.ranges, at + 2, children);
            }
            for (auto& c : children) {
                if (!viable(c.ranges)) continue;
                c.bound = estimate(c.node, c.ranges);
                queue.push(std::move(c));
                ++out.stats.heap_pushes;
            }
        }
        return out;
    }

private:
    static void split(const WaveletTree& tree, NodeHandle node, const std::vector<std::int64_t>& ranges,
                      std::size_t at, State (&children)[2]) {
        const NodeRange r{node, ranges[at], ranges[at + 1]};
        if (r.empty()) {
            for (auto& c : children) {
                c.ranges[at] = 0;
                c.ranges[at + 1] = -1;
            }
            return;
        }
        const auto [l, rr] = tree.expand(r);
        children[0].ranges[at] = l.lo;
        children[0].ranges[at + 1] = l.hi;
        children[1].ranges[at] = rr.lo;
        children[1].ranges[at + 1] = rr.hi;
    }

    bool viable(const std::vector<std::int64_t>& ranges) const {
        bool any = false, all = true;
        for (std::size_t at = 0; at < ranges.size(); at += stride_) {
            const bool present = ranges[at] <= ranges[at + 1];
            any = any || present;
            all = all && present;
        }
        return config_.mode == Mode::ranked_or ? any : all;
    }

    double estimate(NodeHandle node, const std::vector<std::int64_t>& ranges) {
        const bool leaf = node.level == height_;
        for (std::size_t e = 0; e < tf_.size(); ++e) {
            const std::size_t at = e * stride_;
            const std::int64_t primary = ranges[at + 1] - ranges[at] + 1;
            const std::int64_t secondary = secondary_ ? ranges[at + 3] - ranges[at + 2] + 1 : 0;
            if (primary <= 0) {
                tf_[e] = 0;
            } else if (restricted_) {
                // D1 holds distinct documents, R1-hat the remaining occurrences
                if (leaf || config_.estimator == Estimator::e2)
                    tf_[e] = static_cast<std::uint64_t>(secondary) + 1;
                else
                    tf_[e] = static_cast<std::uint64_t>(primary + secondary);
            } else if (leaf || config_.estimator != Estimator::e2) {
                tf_[e] = static_cast<std::uint64_t>(primary);
            } else {
                tf_[e] = static_cast<std::uint64_t>(secondary) + 1;
            }
        }
        std::uint64_t len;
        if (leaf)
            len = lengths_[node.index];
        else if (config_.estimator == Estimator::e0)
            len = index_.collection().stats().min_doc_len;
        else
            len = min_doc_length(lengths_, node, height_);
        return score(config_.measure, index_.collection().stats(), plan_.weights, ScoreInput{tf_, len});
    }

    const Index& index_;
    const SearchConfig& config_;
    const QueryPlan& plan_;
    bool restricted_;
    bool secondary_;
    std::size_t stride_;
    std::span<const std::uint64_t> lengths_;
    const WaveletTree* primary_tree_ = nullptr;
    const WaveletTree* secondary_tree_ = nullptr;
    std::uint32_t height_ = 0;
    std::vector<std::uint64_t> tf_;
};

}  // namespace

SearchResult top_k(const Index& index, const SearchConfig& config, const Query& query) {
    check_compatible(index, config, query);
    const auto p = plan(index, query, config);
    if (p.empty_result) return {};
    return Traversal(index, config, p).run(config.k);
}

std::uint64_t exhaustive_states(const Index& index, const SearchConfig& config, const Query& query) {
    check_compatible(index, config, query);
    const auto p = plan(index, query, config);
    if (p.empty_result) return 0;
    return Traversal(index, config, p).run(index.collection().num_docs()).stats.states_processed;
}

}  // namespace surf
