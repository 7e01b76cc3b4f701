#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "surf/corpus.hpp"

namespace surf {

// Inclusive suffix array interval [lo, hi] of a pattern.
struct Locus {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    std::uint64_t size() const { return hi - lo + 1; }
    friend bool operator==(const Locus&, const Locus&) = default;
};

// Prefix doubling with two counting-sort passes per round. The text must end
// with a unique sentinel 0.
std::vector<std::uint64_t> build_sa(std::span<const Symbol> text);

// Kasai et al.: LCP[i] = lcp(suffix SA[i-1], suffix SA[i]), LCP[0] = 0.
std::vector<std::uint64_t> build_lcp(std::span<const Symbol> text, std::span<const std::uint64_t> sa);

// Two binary searches with a full pattern comparison per probe.
std::optional<Locus> locus(std::span<const std::uint64_t> sa, std::span<const Symbol> text,
                           std::span<const Symbol> pattern);

std::vector<Symbol> extract(std::span<const Symbol> text, std::size_t pos, std::size_t len);

}  // namespace surf
