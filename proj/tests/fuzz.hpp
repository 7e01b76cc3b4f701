#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "surf/baseline.hpp"
#include "surf/engine.hpp"
#include "surf/index.hpp"
#include "surf/query.hpp"

namespace surf::fuzz {

// Terms drawn from the vocabulary, now and then a word the collection lacks.
inline Query random_terms(std::mt19937_64& rng, const Vocabulary& vocab, std::size_t max_terms) {
    Query q;
    const std::size_t m = 1 + rng() % max_terms;
    const auto words = vocab.size() - kFirstWordSymbol;
    for (std::size_t i = 0; i < m; ++i) {
        if (rng() % 20 == 0)
            q.elements.push_back({kUnknownSymbol});
        else
            q.elements.push_back({static_cast<Symbol>(kFirstWordSymbol + rng() % words)});
    }
    return q;
}

// A two-token phrase copied from a random document position; two words when
// some document has them, otherwise a word closed by the terminator.
inline Query random_phrase(std::mt19937_64& rng, const Collection& c) {
    for (int attempt = 0;; ++attempt) {
        const auto d = static_cast<DocId>(1 + rng() % (c.num_docs() - 1));
        const auto tokens = c.doc_tokens(d);
        const std::size_t need = attempt < 64 ? 3 : 2;
        if (tokens.size() < need) continue;
        const auto at = rng() % (tokens.size() - need + 1);
        return Query{{{tokens[at], tokens[at + 1]}}};
    }
}

inline bool same_results(const ResultList& got, const ResultList& want, double rel = 1e-9) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].doc != want[i].doc) return false;
        const double scale = std::max(std::abs(want[i].score), 1e-300);
        if (std::abs(got[i].score - want[i].score) > rel * scale) return false;
    }
    return true;
}

inline std::string describe(const ResultList& r) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& x : r) os << "(" << x.doc << "," << x.score << ")";
    return os.str();
}

// Every estimator each variant supports.
inline std::vector<Estimator> estimators_for(Variant v) {
    if (v == Variant::d) return {Estimator::e0, Estimator::e1};
    return {Estimator::e0, Estimator::e1, Estimator::e2};
}

}  // namespace surf::fuzz
