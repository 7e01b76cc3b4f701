#include "surf/ranking.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace surf {

Measure parse_measure(std::string_view name) {
    if (name == "bm25") return Measure::bm25;
    if (name == "tfidf") return Measure::tfidf;
    if (name == "lmds") return Measure::lmds;
    if (name == "freq") return Measure::freq;
    throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::bm25: return "bm25";
        case Measure::tfidf: return "tfidf";
        case Measure::lmds: return "lmds";
        case Measure::freq: return "freq";
    }
    return "?";
}

void MeasureParams::validate() const {
    if (!(k1 > 0)) throw std::invalid_argument("k1 must be positive");
    if (!(b >= 0 && b <= 1)) throw std::invalid_argument("b must lie in [0,1]");
    if (!(mu > 0)) throw std::invalid_argument("mu must be positive");
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
}

double query_weight(const MeasureParams& params, const CollectionStats& stats, std::uint64_t doc_freq,
                    std::uint32_t query_freq) {
    if (query_freq == 0) throw std::invalid_argument("query_weight: query frequency must be positive");
    if (doc_freq > stats.num_docs) throw std::invalid_argument("query_weight: document frequency exceeds N");
    const auto N = static_cast<double>(stats.num_docs);
    const auto F = static_cast<double>(doc_freq);
    switch (params.kind) {
        case Measure::bm25: {
            const double w = query_freq * std::log((N - F + 0.5) / (F + 0.5));
            return w > 0 ? w : params.epsilon;
        }
        case Measure::tfidf:
            if (doc_freq == 0) throw std::domain_error("query_weight: term absent from collection");
            return std::log(1.0 + N / F);
        case Measure::lmds:
            if (doc_freq == 0) throw std::domain_error("query_weight: term absent from collection");
            return query_freq;
        case Measure::freq:
            return query_freq;
    }
    throw std::logic_error("query_weight: unknown measure");
}

QueryWeights make_query_weights(const MeasureParams& params, const CollectionStats& stats,
                                std::span<const TermStat> terms) {
    QueryWeights w;
    w.terms.reserve(terms.size());
    for (const auto& t : terms) {
        w.terms.push_back({t.doc_freq, t.query_freq, query_weight(params, stats, t.doc_freq, t.query_freq)});
        w.m += t.query_freq;
    }
    return w;
}

double score(const MeasureParams& params, const CollectionStats& stats, const QueryWeights& weights,
             const ScoreInput& input) {
    if (input.tf.size() != weights.terms.size()) throw std::invalid_argument("score: one frequency per term required");
    const auto len = static_cast<double>(input.doc_len);
    double sum = 0.0;
    switch (params.kind) {
        case Measure::bm25: {
            const double norm = params.k1 * (1.0 - params.b + params.b * len / stats.avg_doc_len);
            for (std::size_t t = 0; t < input.tf.size(); ++t) {
                if (input.tf[t] == 0) continue;
                const auto f = static_cast<double>(input.tf[t]);
                sum += (params.k1 + 1.0) * f / (norm + f) * weights.terms[t].weight;
            }
            return sum;
        }
        case Measure::tfidf:
            for (std::size_t t = 0; t < input.tf.size(); ++t) {
                if (input.tf[t] == 0) continue;
                sum += (1.0 + std::log(static_cast<double>(input.tf[t]))) * weights.terms[t].weight;
            }
            return sum / len;
        case Measure::lmds: {
            const auto n = static_cast<double>(stats.num_tokens);
            for (std::size_t t = 0; t < input.tf.size(); ++t) {
                if (input.tf[t] == 0) continue;
                const auto f = static_cast<double>(input.tf[t]);
                const auto F = static_cast<double>(weights.terms[t].doc_freq);
                sum += std::log(f / params.mu * n / F + 1.0) * weights.terms[t].weight;
            }
            return static_cast<double>(weights.m) * std::log(params.mu / (len + params.mu)) + sum;
        }
        case Measure::freq:
            for (std::size_t t = 0; t < input.tf.size(); ++t)
                sum += static_cast<double>(input.tf[t]) * weights.terms[t].weight;
            return sum;
    }
    throw std::logic_error("score: unknown measure");
}

}  // namespace surf
