#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fuzz.hpp"
#include "oracles.hpp"
#include "surf/binary_io.hpp"
#include "temp_dir.hpp"

using namespace surf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

}  // namespace

TEST_CASE("components per variant") {
    auto c = ingest_lines(oracle::running_example_lines());
    auto d = Index::build(c, Variant::d);
    CHECK(d.has_doc_tree());
    CHECK_FALSE(d.repetitions().has_hat_tree());
    CHECK_FALSE(d.has_restricted());
    auto dr = Index::build(c, Variant::dr);
    CHECK(dr.repetitions().has_hat_tree());
    auto d1r1 = Index::build(c, Variant::d1r1);
    CHECK_FALSE(d1r1.has_doc_tree());
    CHECK(d1r1.has_restricted());
    CHECK(dr.count(std::vector<Symbol>{2}) == 6);
    CHECK(dr.repetitions().doc_frequency(4, 9) == 3);
}

TEST_CASE("save and load round trip") {
    std::mt19937_64 rng(71);
    auto lines = oracle::random_lines(rng, 30, 8, 12);
    for (auto v : {Variant::d, Variant::dr, Variant::d1r1}) {
        testing::TempDir dir;
        auto idx = Index::build(ingest_lines(lines), v);
        auto m = idx.save(dir.path());
        auto back = Index::load(dir.path());
        CHECK(back.variant() == v);
        CHECK(back.collection().fingerprint() == idx.collection().fingerprint());
        CHECK(std::equal(back.sa().begin(), back.sa().end(), idx.sa().begin(), idx.sa().end()));
        CHECK(Index::read_manifest(dir.path()).to_text() == m.to_text());
        for (int q = 0; q < 20; ++q) {
            auto query = fuzz::random_terms(rng, idx.collection().vocabulary(), 3);
            SearchConfig cfg{.k = 5, .estimator = v == Variant::d ? Estimator::e1 : Estimator::e2, .variant = v};
            CHECK(top_k(back, cfg, query).results == top_k(idx, cfg, query).results);
        }
        testing::TempDir again;
        back.save(again.path());
        for (const auto& c : m.components) CHECK(slurp(dir / c.file) == slurp(again / c.file));
    }
}

TEST_CASE("corrupt indexes are rejected") {
    testing::TempDir dir;
    auto idx = Index::build(ingest_lines(oracle::running_example_lines()), Variant::dr);
    idx.save(dir.path());
    const auto manifest = slurp(dir / "manifest.txt");

    SUBCASE("garbage manifest") {
        spit(dir / "manifest.txt", "hello\n");
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("unknown key") {
        spit(dir / "manifest.txt", manifest + "extra=1\n");
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("missing key") {
        spit(dir / "manifest.txt", manifest.substr(manifest.find('\n') + 1));
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("wrong fingerprint") {
        auto text = manifest;
        auto at = text.find("fingerprint=") + 12;
        text[at] = text[at] == '0' ? '1' : '0';
        spit(dir / "manifest.txt", text);
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("flipped component byte") {
        auto bytes = slurp(dir / "sa.bin");
        bytes[bytes.size() / 2] ^= 0x5a;
        spit(dir / "sa.bin", bytes);
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("truncated component") {
        auto bytes = slurp(dir / "reps.bin");
        spit(dir / "reps.bin", bytes.substr(0, bytes.size() - 3));
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("missing component") {
        fs::remove(dir / "docarray.bin");
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
    SUBCASE("no manifest") {
        fs::remove(dir / "manifest.txt");
        CHECK_THROWS_AS(Index::load(dir.path()), format_error);
    }
}

TEST_CASE("manifest parsing") {
    IndexManifest m;
    m.variant = Variant::d1r1;
    m.fingerprint = 0xdeadbeef;
    m.num_docs = 3;
    m.num_tokens = 9;
    m.components.push_back({"SRFS", "sa.bin", 17, 0xabc});
    auto back = IndexManifest::parse(m.to_text());
    CHECK(back.to_text() == m.to_text());
    CHECK_THROWS_AS(IndexManifest::parse(m.to_text() + "variant=d\n"), format_error);
    CHECK_THROWS_AS(IndexManifest::parse(m.to_text() + "component=SRFS sa.bin x 1\n"), format_error);
    auto bad_variant = m.to_text();
    bad_variant.replace(bad_variant.find("d1r1"), 4, "zz");
    CHECK_THROWS_AS(IndexManifest::parse(bad_variant), format_error);
}
