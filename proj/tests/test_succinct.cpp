#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "surf/bit_vector.hpp"
#include "surf/wavelet_tree.hpp"

using namespace surf;

namespace {

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = coin(rng);
    return bits;
}

std::uint64_t count_in(const std::vector<std::uint32_t>& v, std::int64_t lo, std::int64_t hi, std::uint32_t a,
                       std::uint32_t b) {
    std::uint64_t c = 0;
    for (auto i = lo; i <= hi; ++i) c += v[i] >= a && v[i] <= b;
    return c;
}

}  // namespace

TEST_CASE("bit vector from string") {
    auto bv = RankSelectBits::from_string("1101 0");
    CHECK(bv.size() == 5);
    CHECK(bv.ones() == 3);
    CHECK(bv.zeros() == 2);
    CHECK(bv.rank1(0) == 0);
    CHECK(bv.rank1(2) == 2);
    CHECK(bv.rank1(5) == 3);
    CHECK(bv.rank0(5) == 2);
    CHECK(bv.select1(0) == 0);
    CHECK(bv.select1(2) == 3);
    CHECK_THROWS_AS(bv.select1(3), std::out_of_range);
    CHECK_THROWS_AS(bv.rank1(6), std::out_of_range);
}

TEST_CASE("empty bit vector") {
    RankSelectBits bv;
    CHECK(bv.size() == 0);
    CHECK(bv.rank1(0) == 0);
    CHECK_THROWS(bv.select1(0));
}

TEST_CASE("rank and select agree with a linear scan") {
    std::mt19937_64 rng(7);
    for (double density : {0.001, 0.1, 0.5, 0.97}) {
        for (std::size_t n : {1u, 63u, 64u, 65u, 511u, 512u, 513u, 5000u, 70000u}) {
            auto bits = random_bits(rng, n, density);
            auto bv = RankSelectBits::from_bits(bits);
            std::uint64_t ones = 0;
            std::vector<std::uint64_t> positions;
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(bv.rank1(i) == ones);
                REQUIRE(bv[i] == bits[i]);
                if (bits[i]) {
                    positions.push_back(i);
                    ++ones;
                }
            }
            REQUIRE(bv.rank1(n) == ones);
            REQUIRE(bv.ones() == ones);
            for (std::size_t j = 0; j < positions.size(); ++j) REQUIRE(bv.select1(j) == positions[j]);
        }
    }
}

TEST_CASE("bit builder") {
    BitBuilder b;
    b.push_back(true);
    b.push_back(false);
    b.resize(130);
    b.set(129, true);
    auto bv = std::move(b).build();
    CHECK(bv.size() == 130);
    CHECK(bv.ones() == 2);
    CHECK(bv.select1(1) == 129);
}

TEST_CASE("bit vector save and load") {
    std::mt19937_64 rng(3);
    auto bv = RankSelectBits::from_bits(random_bits(rng, 3000, 0.3));
    std::stringstream ss;
    bv.save(ss);
    auto back = RankSelectBits::load(ss);
    CHECK(back == bv);
    CHECK(back.select1(100) == bv.select1(100));
}

TEST_CASE("wavelet tree rejects bad input") {
    std::vector<std::uint32_t> v{0, 1, 4};
    CHECK_THROWS_AS(WaveletTree(v, 4), std::invalid_argument);
    CHECK_THROWS_AS(WaveletTree(v, 0), std::invalid_argument);
}

TEST_CASE("wavelet tree over the running example document array") {
    std::vector<std::uint32_t> d{0, 2, 1, 3, 2, 1, 3, 3, 3, 1, 2, 1, 3, 2};
    WaveletTree wt(d, 4);
    CHECK(wt.height() == 2);
    CHECK(wt.reconstruct() == d);
    auto [l, r] = expand_range(wt, wt.range(4, 9));
    CHECK(l.lo == 2);
    CHECK(l.hi == 3);
    CHECK(r.lo == 2);
    CHECK(r.hi == 5);
    CHECK(sym_range(wt, l.node) == std::pair<std::uint32_t, std::uint32_t>{0, 1});
    CHECK(sym_range(wt, r.node) == std::pair<std::uint32_t, std::uint32_t>{2, 3});
    CHECK_THROWS_AS(wt.expand(NodeHandle{2, 0}), std::logic_error);
}

TEST_CASE("wavelet tree ranges count symbols below each node") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t sigma = 1 + rng() % 40;
        std::size_t n = rng() % 300;
        std::vector<std::uint32_t> v(n);
        for (auto& x : v) x = rng() % sigma;
        WaveletTree wt(v, sigma);
        REQUIRE(wt.size() == n);
        REQUIRE(wt.reconstruct() == v);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(wt.access(i) == v[i]);
        if (n == 0) continue;
        std::int64_t lo = rng() % n, hi = lo + static_cast<std::int64_t>(rng() % (n - lo)) - 1;
        std::vector<NodeRange> stack{wt.range(lo, hi)};
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            auto [a, b] = wt.sym_range(cur.node);
            REQUIRE(static_cast<std::uint64_t>(cur.size()) == count_in(v, lo, hi, a, b));
            if (cur.node.level == wt.height()) continue;
            auto [x, y] = wt.expand(cur);
            stack.push_back(x);
            stack.push_back(y);
        }
    }
}

TEST_CASE("wavelet tree save and load") {
    std::vector<std::uint32_t> v{5, 0, 3, 3, 1, 6, 2};
    WaveletTree wt(v, 7);
    std::stringstream ss;
    wt.save(ss);
    auto back = WaveletTree::load(ss);
    CHECK(back.reconstruct() == v);
    CHECK(back.height() == wt.height());
}
