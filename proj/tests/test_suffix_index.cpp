#include "doctest.h"
#include "oracles.hpp"
#include "surf/suffix_index.hpp"

using namespace surf;

TEST_CASE("running example suffix and LCP arrays") {
    auto c = ingest_lines(oracle::running_example_lines());
    auto sa = build_sa(c.text());
    CHECK(sa == std::vector<std::uint64_t>{13, 12, 3, 8, 11, 2, 7, 6, 5, 0, 10, 1, 4, 9});
    CHECK(build_lcp(c.text(), sa) == std::vector<std::uint64_t>{0, 0, 1, 2, 0, 2, 3, 1, 2, 1, 0, 3, 2, 1});
    std::vector<Symbol> la{2}, la_end{2, 1}, missing{3, 3, 3};
    CHECK(locus(sa, c.text(), la) == Locus{4, 9});
    CHECK(locus(sa, c.text(), la_end) == Locus{4, 6});
    CHECK_FALSE(locus(sa, c.text(), missing).has_value());
    CHECK_THROWS_AS(locus(sa, c.text(), std::span<const Symbol>{}), std::invalid_argument);
}

TEST_CASE("suffix array needs a unique trailing sentinel") {
    std::vector<Symbol> no_sentinel{2, 3, 1}, two{2, 0, 1, 0};
    CHECK_THROWS(build_sa(no_sentinel));
    CHECK_THROWS(build_sa(two));
}

TEST_CASE("suffix and LCP arrays match the naive construction") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        auto c = ingest_lines(oracle::random_lines(rng, 1 + rng() % 12, 1 + rng() % 5, 1 + rng() % 10));
        auto sa = build_sa(c.text());
        REQUIRE(sa == oracle::naive_sa(c.text()));
        REQUIRE(build_lcp(c.text(), sa) == oracle::naive_lcp(c.text(), sa));
    }
}

TEST_CASE("locus covers exactly the occurrences") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 100; ++t) {
        auto c = ingest_lines(oracle::random_lines(rng, 1 + rng() % 10, 1 + rng() % 4, 1 + rng() % 8));
        auto sa = build_sa(c.text());
        for (const auto& p : oracle::distinct_substrings(c.text(), 3)) {
            auto loc = locus(sa, c.text(), p);
            REQUIRE(loc.has_value());
            REQUIRE(loc->size() == oracle::scan_count(c.text(), p));
            for (auto i = loc->lo; i <= loc->hi; ++i) REQUIRE(oracle::starts_with(c.text(), sa[i], p));
        }
    }
}

TEST_CASE("extract") {
    std::vector<Symbol> text{2, 3, 1, 0};
    CHECK(extract(text, 1, 2) == std::vector<Symbol>{3, 1});
    CHECK_THROWS_AS(extract(text, 2, 9), std::out_of_range);
}
