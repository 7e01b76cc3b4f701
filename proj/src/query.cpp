#include "surf/query.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>

#include "surf/engine.hpp"
#include "surf/index.hpp"

namespace surf {

bool Query::has_phrase() const {
    return std::any_of(elements.begin(), elements.end(), [](const auto& e) { return e.size() > 1; });
}

void Query::validate() const {
    for (const auto& e : elements) {
        if (e.empty()) throw std::invalid_argument("query element must not be empty");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == kSentinelSymbol) throw std::invalid_argument("query must not contain the sentinel symbol");
            if (e[i] == kTerminatorSymbol && (i + 1 != e.size() || e.size() == 1))
                throw std::invalid_argument("terminator symbol may only close a phrase");
        }
    }
}

DistinctElements distinct_elements(const Query& q) {
    DistinctElements out;
    std::map<std::vector<Symbol>, std::size_t> pos;
    for (const auto& e : q.elements) {
        auto [it, inserted] = pos.try_emplace(e, out.elements.size());
        if (inserted) {
            out.elements.push_back(e);
            out.multiplicity.push_back(1);
        } else {
            ++out.multiplicity[it->second];
        }
    }
    return out;
}

TextQuery parse_query_text(std::string_view body) {
    TextQuery q;
    std::size_t i = 0;
    while (i < body.size()) {
        const auto quote = body.find('"', i);
        for (auto w : split_whitespace(body.substr(i, quote == std::string_view::npos ? std::string_view::npos : quote - i)))
            q.push_back({std::string(w)});
        if (quote == std::string_view::npos) break;
        const auto close = body.find('"', quote + 1);
        if (close == std::string_view::npos) throw std::invalid_argument("unterminated phrase in query");
        std::vector<std::string> phrase;
        for (auto w : split_whitespace(body.substr(quote + 1, close - quote - 1))) phrase.emplace_back(w);
        if (!phrase.empty()) q.push_back(std::move(phrase));
        i = close + 1;
    }
    return q;
}

std::string format_query_text(const TextQuery& q) {
    std::string out;
    for (const auto& e : q) {
        if (!out.empty()) out.push_back(' ');
        if (e.size() > 1) out.push_back('"');
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out.push_back(' ');
            out += e[i];
        }
        if (e.size() > 1) out.push_back('"');
    }
    return out;
}

Query to_query(const TextQuery& q, const Vocabulary& vocab) {
    Query out;
    for (const auto& e : q) {
        auto& ids = out.elements.emplace_back();
        for (const auto& w : e) {
            const auto id = vocab.find(w);
            ids.push_back(id ? *id : kUnknownSymbol);
        }
    }
    return out;
}

std::vector<QueryLine> read_query_file(std::istream& in) {
    std::vector<QueryLine> out;
    std::set<std::string> seen;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (split_whitespace(line).empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw std::invalid_argument("query file line " + std::to_string(lineno) + ": expected qid<TAB>body");
        QueryLine q{line.substr(0, tab), line.substr(tab + 1)};
        if (!seen.insert(q.qid).second)
            throw std::invalid_argument("query file line " + std::to_string(lineno) + ": duplicate qid " + q.qid);
        out.push_back(std::move(q));
    }
    return out;
}

TextQuery mwe_parse(const Index& index, const TextQuery& q, double threshold) {
    const auto& vocab = index.collection().vocabulary();
    const auto n = static_cast<double>(index.collection().size());
    const auto occurrences = [&](const std::vector<std::string>& words) -> std::uint64_t {
        std::vector<Symbol> ids;
        for (const auto& w : words) {
            const auto id = vocab.find(w);
            if (!id) return 0;
            ids.push_back(*id);
        }
        return index.count(ids);
    };

    TextQuery units = q;
    while (units.size() > 1) {
        double best = -1.0;
        std::size_t best_at = 0;
        for (std::size_t i = 0; i + 1 < units.size(); ++i) {
            std::vector<std::string> joined = units[i];
            joined.insert(joined.end(), units[i + 1].begin(), units[i + 1].end());
            const auto ab = occurrences(joined);
            if (ab == 0) continue;
            const auto a = occurrences(units[i]);
            const auto b = occurrences(units[i + 1]);
            const double assoc = static_cast<double>(ab) * n / (static_cast<double>(a) * static_cast<double>(b));
            if (assoc > best) {
                best = assoc;
                best_at = i;
            }
        }
        if (best < 0 || !(best >= threshold)) break;
        units[best_at].insert(units[best_at].end(), units[best_at + 1].begin(), units[best_at + 1].end());
        units.erase(units.begin() + static_cast<std::ptrdiff_t>(best_at) + 1);
    }
    return units;
}

std::string format_run(std::string_view qid, std::span<const Result> results, const Collection& collection) {
    std::string out;
    char score[64];
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::snprintf(score, sizeof score, "%.6f", results[i].score);
        out.append(qid);
        out += " Q0 ";
        out += collection.doc_name(results[i].doc);
        out += ' ';
        out += std::to_string(i + 1);
        out += ' ';
        out += score;
        out += " surf\n";
    }
    return out;
}

}  // namespace surf
