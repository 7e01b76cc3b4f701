#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "surf/corpus.hpp"

using namespace surf;

TEST_CASE("vocabulary reserves the sentinel and terminator") {
    Vocabulary v;
    CHECK(v.size() == 2);
    CHECK(v.token(kSentinelSymbol) == "$");
    CHECK(v.token(kTerminatorSymbol) == "#");
    CHECK(v.intern("LA") == 2);
    CHECK(v.intern("O") == 3);
    CHECK(v.intern("LA") == 2);
    CHECK(v.find("O") == 3u);
    CHECK_FALSE(v.find("X").has_value());
    std::stringstream ss;
    v.save(ss);
    CHECK(Vocabulary::load(ss) == v);
}

TEST_CASE("running example concatenation and relabeling") {
    auto c = ingest_lines(oracle::running_example_lines());
    std::vector<Symbol> expected{2, 3, 2, 1, 3, 2, 2, 2, 1, 3, 3, 2, 1, 0};
    CHECK(std::vector<Symbol>(c.text().begin(), c.text().end()) == expected);
    CHECK(c.num_docs() == 4);
    CHECK(std::vector<DocId>(c.pi().begin(), c.pi().end()) == std::vector<DocId>{1, 3, 2, 0});
    CHECK(std::vector<std::uint64_t>(c.doc_lengths().begin(), c.doc_lengths().end()) ==
          std::vector<std::uint64_t>{1, 4, 4, 5});
    CHECK(c.doc_name(3) == "2");
    CHECK(c.doc_name(1) == "1");
    CHECK(c.slot_text(1) == "O LA LA LA");
    CHECK(c.stats().num_tokens == 14);
    CHECK(c.stats().num_docs == 4);
    CHECK(c.stats().avg_doc_len == doctest::Approx(3.5));
    CHECK(c.stats().min_doc_len == 1);
    CHECK(c.stats().max_doc_len == 5);
    CHECK(c.doc_tokens(3).size() == 5);
}

TEST_CASE("minimum document length below a node") {
    auto c = ingest_lines(oracle::running_example_lines());
    CHECK(min_doc_length(c.doc_lengths(), NodeHandle{1, 1}, 2) == 4);
    CHECK(min_doc_length(c.doc_lengths(), NodeHandle{2, 3}, 2) == 5);
    CHECK(min_doc_length(c.doc_lengths(), NodeHandle{0, 0}, 2) == 1);
}

TEST_CASE("single document") {
    std::vector<std::string> lines{"a"};
    auto c = ingest_lines(lines);
    CHECK(std::vector<Symbol>(c.text().begin(), c.text().end()) == std::vector<Symbol>{2, 1, 0});
    CHECK(std::vector<std::uint64_t>(c.doc_lengths().begin(), c.doc_lengths().end()) ==
          std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("lengths count the terminator") {
    std::vector<std::string> lines{"a a", "b"};
    auto c = ingest_lines(lines);
    CHECK(std::vector<std::uint64_t>(c.doc_lengths().begin(), c.doc_lengths().end()) ==
          std::vector<std::uint64_t>{1, 2, 3});
    CHECK(c.doc_name(1) == "2");
    CHECK(c.doc_name(2) == "1");
}

TEST_CASE("relabeling is stable and sorted by length") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::uint64_t> slots(1 + rng() % 30);
        for (auto& x : slots) x = 2 + rng() % 6;
        slots.push_back(1);
        auto rel = relabel_by_length(slots);
        REQUIRE(rel.pi.back() == 0);
        for (std::size_t s = 0; s < slots.size(); ++s) REQUIRE(rel.lengths[rel.pi[s]] == slots[s]);
        for (std::size_t d = 1; d < rel.lengths.size(); ++d) REQUIRE(rel.lengths[d - 1] <= rel.lengths[d]);
        for (std::size_t a = 0; a + 1 < slots.size(); ++a)
            for (std::size_t b = a + 1; b + 1 < slots.size(); ++b)
                if (slots[a] == slots[b]) REQUIRE(rel.pi[a] < rel.pi[b]);
    }
}

TEST_CASE("rebuilding from the concatenation gives the same collection") {
    std::mt19937_64 rng(9);
    auto c = ingest_lines(oracle::random_lines(rng, 20, 6, 8));
    std::vector<std::string> names(c.names_by_slot().begin(), c.names_by_slot().end());
    auto back = Collection::from_concatenation(c.vocabulary(), {c.text().begin(), c.text().end()}, names);
    CHECK(std::equal(back.pi().begin(), back.pi().end(), c.pi().begin(), c.pi().end()));
    CHECK(back.fingerprint() == c.fingerprint());
    CHECK(back.stats().num_tokens == c.stats().num_tokens);
}

TEST_CASE("ingest from a stream skips nothing and splits on whitespace") {
    std::istringstream in("a  b\tc\nb\n");
    auto c = ingest(in);
    CHECK(c.num_docs() == 3);
    CHECK(c.size() == 7);
    CHECK(split_whitespace("  x y  ").size() == 2);
}
