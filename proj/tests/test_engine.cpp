#include "doctest.h"
#include "fuzz.hpp"
#include "oracles.hpp"

using namespace surf;

namespace {

const Index& running_example(Variant v) {
    static const Index d = Index::build(ingest_lines(oracle::running_example_lines()), Variant::d);
    static const Index dr = Index::build(ingest_lines(oracle::running_example_lines()), Variant::dr);
    static const Index d1r1 = Index::build(ingest_lines(oracle::running_example_lines()), Variant::d1r1);
    return v == Variant::d ? d : v == Variant::dr ? dr : d1r1;
}

Symbol id(const char* word) { return running_example(Variant::dr).collection().vocabulary().find(word).value(); }

}  // namespace

TEST_CASE("frequency ranking of a single term") {
    for (auto v : {Variant::d, Variant::dr, Variant::d1r1}) {
        for (auto e : fuzz::estimators_for(v)) {
            SearchConfig cfg{.k = 2, .measure = {.kind = Measure::freq}, .estimator = e, .variant = v};
            auto res = top_k(running_example(v), cfg, Query{{{id("LA")}}});
            CHECK(res.results == ResultList{{3, 3.0}, {1, 2.0}});
        }
    }
}

TEST_CASE("phrase plan") {
    SearchConfig cfg{.measure = {.kind = Measure::tfidf}};
    auto p = plan(running_example(Variant::dr), Query{{{id("LA"), kTerminatorSymbol}}}, cfg);
    REQUIRE(p.loci.size() == 1);
    CHECK(p.loci[0] == Locus{4, 6});
    CHECK(p.weights.terms[0].doc_freq == 3);
    CHECK(p.weights.terms[0].weight == doctest::Approx(std::log(1.0 + 4.0 / 3.0)));

    SearchConfig bm25;
    CHECK(plan(running_example(Variant::dr), Query{{{id("LA"), kTerminatorSymbol}}}, bm25).weights.terms[0].weight ==
          1e-6);
}

TEST_CASE("absent elements") {
    const auto& idx = running_example(Variant::dr);
    Query q{{{id("LA")}, {kUnknownSymbol}}};
    SearchConfig and_cfg{.mode = Mode::ranked_and};
    CHECK(top_k(idx, and_cfg, q).results.empty());
    SearchConfig or_cfg{.measure = {.kind = Measure::freq}};
    CHECK(top_k(idx, or_cfg, q).results.size() == 3);
    CHECK(top_k(idx, or_cfg, Query{{{kUnknownSymbol}}}).results.empty());
}

TEST_CASE("incompatible configurations") {
    Query term{{{id("O")}}};
    Query phrase{{{id("O"), id("LA")}}};
    CHECK_THROWS_AS(top_k(running_example(Variant::d), SearchConfig{.estimator = Estimator::e2, .variant = Variant::d},
                          term),
                    incompatible_config);
    CHECK_THROWS_AS(top_k(running_example(Variant::d1r1), SearchConfig{.variant = Variant::d1r1}, phrase),
                    incompatible_config);
    CHECK_THROWS_AS(top_k(running_example(Variant::d1r1), SearchConfig{.variant = Variant::dr}, term),
                    incompatible_config);
    CHECK_THROWS_AS(top_k(running_example(Variant::dr), SearchConfig{.k = 0}, term), std::invalid_argument);
    CHECK_NOTHROW(top_k(running_example(Variant::dr), SearchConfig{.estimator = Estimator::e1, .variant = Variant::d}, term));
}

TEST_CASE("traversal statistics") {
    const auto& idx = running_example(Variant::dr);
    SearchConfig cfg{.k = 1};
    Query q{{{id("LA")}}};
    auto res = top_k(idx, cfg, q);
    CHECK(res.stats.states_processed >= 3);
    CHECK(exhaustive_states(idx, cfg, q) >= res.stats.states_processed);
}

TEST_CASE("engine agrees with the direct scan on random collections") {
    std::mt19937_64 rng(51);
    for (int inst = 0; inst < 60; ++inst) {
        auto lines = oracle::random_lines(rng, 1 + rng() % 40, 1 + rng() % 10, 1 + rng() % 16);
        std::vector<Index> indexes;
        for (auto v : {Variant::d, Variant::dr, Variant::d1r1}) indexes.push_back(Index::build(ingest_lines(lines), v));
        const auto& c = indexes[0].collection();
        for (int qn = 0; qn < 4; ++qn) {
            const bool phrase = qn == 3;
            Query q = phrase ? fuzz::random_phrase(rng, c) : fuzz::random_terms(rng, c.vocabulary(), 3);
            for (auto measure : {Measure::bm25, Measure::tfidf, Measure::lmds})
                for (auto mode : {Mode::ranked_or, Mode::ranked_and})
                    for (std::size_t k : {1u, 3u, 10u}) {
                        const MeasureParams mp{.kind = measure};
                        const auto want = direct_scan_topk(c, q, k, mode, mp);
                        for (const auto& idx : indexes) {
                            if (phrase && idx.variant() == Variant::d1r1) continue;
                            for (auto e : fuzz::estimators_for(idx.variant())) {
                                SearchConfig cfg{.k = k, .mode = mode, .measure = mp, .estimator = e,
                                                 .variant = idx.variant()};
                                const auto got = top_k(idx, cfg, q).results;
                                INFO("variant " << to_string(idx.variant()) << " est " << to_string(e) << " measure "
                                                << to_string(measure) << " mode " << to_string(mode) << " k " << k);
                                INFO("got " << fuzz::describe(got) << " want " << fuzz::describe(want));
                                REQUIRE(fuzz::same_results(got, want));
                            }
                        }
                    }
        }
    }
}

TEST_CASE("result counts follow the mode") {
    const auto& idx = running_example(Variant::dr);
    CHECK(top_k(idx, SearchConfig{.k = 4}, Query{{{id("LA")}}}).results.size() == 3);
    Query both{{{id("LA")}, {id("O")}}};
    SearchConfig cfg{.k = 3, .mode = Mode::ranked_and};
    CHECK(top_k(idx, cfg, both).results ==
          direct_scan_topk(idx.collection(), both, 3, Mode::ranked_and, MeasureParams{}));
}

TEST_CASE("exhaustive states count the viable nodes") {
    std::mt19937_64 rng(57);
    for (int inst = 0; inst < 40; ++inst) {
        auto lines = oracle::random_lines(rng, 1 + rng() % 30, 1 + rng() % 8, 1 + rng() % 10);
        auto idx = Index::build(ingest_lines(lines), Variant::dr);
        const auto& c = idx.collection();
        auto q = fuzz::random_terms(rng, c.vocabulary(), 3);
        for (auto mode : {Mode::ranked_or, Mode::ranked_and}) {
            std::size_t located = 0;
            bool any_missing = false;
            for (const auto& e : distinct_elements(q).elements) {
                if (!idx.locate(e)) {
                    any_missing = true;
                    continue;
                }
                ++located;
            }
            std::uint64_t expected = 0;
            const auto height = idx.doc_tree().height();
            if (located > 0 && !(mode == Mode::ranked_and && any_missing)) {
                for (std::uint32_t level = 0; level <= height; ++level)
                    for (std::uint64_t node = 0; node < (std::uint64_t{1} << level); ++node) {
                        const auto lo = node << (height - level), hi = ((node + 1) << (height - level)) - 1;
                        // viable: OR needs one element below the node, AND every element
                        std::vector<bool> seen(located, false);
                        std::size_t in_or = 0;
                        std::size_t e_idx = 0;
                        for (const auto& e : distinct_elements(q).elements) {
                            if (!idx.locate(e)) continue;
                            for (auto d = lo; d <= hi && d < c.num_docs(); ++d) {
                                auto t = c.doc_tokens(static_cast<DocId>(d));
                                if (std::find(t.begin(), t.end(), e[0]) != t.end()) seen[e_idx] = true;
                            }
                            in_or += seen[e_idx];
                            ++e_idx;
                        }
                        expected += mode == Mode::ranked_or ? in_or > 0 : in_or == located;
                    }
            }
            for (auto e : {Estimator::e0, Estimator::e1, Estimator::e2}) {
                SearchConfig cfg{.mode = mode, .estimator = e};
                REQUIRE(exhaustive_states(idx, cfg, q) == expected);
            }
        }
    }
}
